import pytest
from hypothesis import given, strategies as st

from cathaul.algebra.catgroup import (CatGroupMorphism, cg_compose, cg_identity, cg_inverse, cg_mul, cg_reverse,
                                      cg_source, cg_target, check_categorical_group, functor_S, gdd_identity)
from cathaul.algebra.crossed_module import inner_module, normal_subgroup_module, validate_crossed_module
from cathaul.algebra.groups import FiniteGroup, builtin_group, dihedral_group, symmetric_group
from cathaul.exceptions import FixtureError, NotComposable

S3 = symmetric_group(3)
S3_A3 = normal_subgroup_module(S3, [S3.element(label) for label in ('e', '(123)', '(132)')])

indices_g = st.integers(min_value=0, max_value=5)
indices_h = st.integers(min_value=0, max_value=2)
morphisms = st.builds(CatGroupMorphism, indices_h, indices_g)


def test_symmetric_group_labels(s3):
    assert s3.order == 6
    assert s3.label(s3.identity) == 'e'
    assert s3.mul(s3.element('(123)'), s3.element('(123)')) == s3.element('(132)')
    assert s3.validate_axioms() == []


def test_dihedral_group_order():
    d4 = dihedral_group(4)
    assert d4.order == 8
    assert d4.validate_axioms() == []


def test_table_without_inverses_is_rejected():
    with pytest.raises(FixtureError):
        FiniteGroup([[0, 1], [1, 1]])


def test_builtin_group_needs_n():
    with pytest.raises(FixtureError):
        builtin_group({'builtin': 'symmetric'})
    with pytest.raises(FixtureError):
        builtin_group({'builtin': 'cyclic', 'n': 4})


def test_non_normal_subgroup_is_rejected(s3):
    with pytest.raises(FixtureError):
        normal_subgroup_module(s3, [s3.element('e'), s3.element('(12)')])


def test_s3_a3_passes_exhaustive_validation(s3_a3):
    report = validate_crossed_module(s3_a3)
    assert report.passed
    assert report.extras['mode'] == 'exhaustive'


def test_trivial_action_breaks_first_peiffer_identity(s3):
    cm = normal_subgroup_module(s3, [s3.element(label) for label in ('e', '(123)', '(132)')], trivial_action=True)
    report = validate_crossed_module(cm)
    assert not report.entry('peiffer_1').passed
    assert report.entry('peiffer_1').witness is not None
    # A3 is abelian, so conjugation in H is trivial too
    assert report.entry('peiffer_2').passed


def test_inner_dihedral_module_passes():
    cm = inner_module(dihedral_group(4))
    assert validate_crossed_module(cm).passed
    assert check_categorical_group(cm).passed


def test_categorical_group_laws_exhaustive(s3_a3):
    report = check_categorical_group(s3_a3)
    assert report.passed
    assert report.extras['composable_pairs'] == 6 * 3 * 3


def test_compose_rejects_mismatched_morphisms(s3_a3):
    m1 = CatGroupMorphism(S3_A3.H.identity, S3.element('(12)'))
    m2 = CatGroupMorphism(S3_A3.H.identity, S3.element('(13)'))
    with pytest.raises(NotComposable):
        cg_compose(s3_a3, m2, m1)


@given(morphisms, morphisms, morphisms)
def test_product_is_associative(a, b, c):
    left = cg_mul(S3_A3, cg_mul(S3_A3, a, b), c)
    right = cg_mul(S3_A3, a, cg_mul(S3_A3, b, c))
    assert (left.h, left.g) == (right.h, right.g)


@given(morphisms)
def test_group_inverse(m):
    product = cg_mul(S3_A3, m, cg_inverse(S3_A3, m))
    assert (product.h, product.g) == (S3_A3.H.identity, S3.identity)


@given(morphisms)
def test_reverse_is_categorical_inverse(m):
    back = cg_reverse(S3_A3, m)
    loop = cg_compose(S3_A3, back, m)
    assert (loop.h, loop.g) == (S3_A3.H.identity, cg_source(S3_A3, m))
    assert cg_target(S3_A3, back) == cg_source(S3_A3, m)


@given(indices_g)
def test_functor_S_sends_identities_to_identities(g):
    image = functor_S(S3_A3, cg_identity(S3_A3, g))
    expected = gdd_identity(g)
    assert (image.g1, image.g0) == (expected.g1, expected.g0)
