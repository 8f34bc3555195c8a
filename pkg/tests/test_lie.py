import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cathaul.algebra.catgroup import check_categorical_group
from cathaul.algebra.crossed_module import validate_crossed_module
from cathaul.exceptions import LogBranch
from cathaul.lie.crossed_modules import alpha_star, so3_cover_module, tau_star, validate_algebra_maps
from cathaul.lie.groups import SO3, SU2, U1, MatrixLieGroup, VectorGroup, builtin_lie_group

su2 = SU2()
so3 = SO3()
cover = so3_cover_module()

small_vectors = st.lists(st.floats(min_value=-1.0, max_value=1.0), min_size=3, max_size=3).map(np.array)


@given(small_vectors)
def test_su2_log_inverts_exp(x):
    assert np.allclose(su2.log(su2.exp(x)), x, atol=1e-12)


@given(small_vectors)
def test_so3_log_inverts_exp(x):
    assert np.allclose(so3.log(so3.exp(x)), x, atol=1e-10)


@given(small_vectors, small_vectors)
def test_su2_bracket_matches_matrix_commutator(x, y):
    assert np.allclose(su2.bracket(x, y), MatrixLieGroup.bracket(su2, x, y), atol=1e-12)


@given(small_vectors, small_vectors)
def test_su2_closed_form_exp_matches_expm(x, y):
    assert np.allclose(su2.exp(x), MatrixLieGroup.exp(su2, x), atol=1e-12)
    assert np.allclose(so3.exp(y), MatrixLieGroup.exp(so3, y), atol=1e-12)


@given(small_vectors, small_vectors)
def test_rotation_is_a_homomorphism(x, y):
    U, V = su2.exp(x), su2.exp(y)
    assert np.allclose(su2.rotation(U @ V), su2.rotation(U) @ su2.rotation(V), atol=1e-12)
    assert so3.membership_residual(su2.rotation(U)) < 1e-12
    # the cover is the exponential map downstairs
    assert np.allclose(su2.rotation(U), so3.exp(x), atol=1e-12)


@given(small_vectors, small_vectors)
def test_closed_form_adjoint(x, y):
    g = su2.exp(x)
    assert np.allclose(su2.Ad(g, y), MatrixLieGroup.Ad(su2, g, y), atol=1e-12)


def test_batched_maps(rng):
    xs = rng.uniform(-1, 1, size=(5, 3))
    gs = su2.exp(xs)
    assert gs.shape == (5, 2, 2)
    assert np.allclose(su2.log(gs), xs, atol=1e-12)
    assert su2.Ad(gs, xs).shape == (5, 3)


def test_log_branch_cut():
    with pytest.raises(LogBranch):
        su2.log(-np.eye(2, dtype=complex))
    with pytest.raises(LogBranch):
        so3.log(so3.exp(np.array([np.pi, 0.0, 0.0])))


def test_projection_restores_membership(rng):
    g = su2.exp(rng.uniform(-1, 1, size=3)) * 1.001
    assert su2.membership_residual(g) > 1e-4
    assert su2.membership_residual(su2.project(g)) < 1e-12
    R = so3.exp(rng.uniform(-1, 1, size=3)) + 1e-4
    assert so3.membership_residual(so3.project(R)) < 1e-12


def test_abelian_groups():
    u1 = U1()
    assert np.allclose(u1.log(u1.exp(np.array([0.5]))), [0.5])
    r2 = VectorGroup(2)
    g = r2.exp(np.array([0.3, -1.0]))
    assert np.allclose(r2.mul(g, r2.inv(g)), np.eye(2))
    assert np.allclose(r2.bracket([1.0, 0.0], [0.0, 1.0]), 0.0)


def test_builtin_lie_group_names():
    assert isinstance(builtin_lie_group('SU2'), SU2)
    assert builtin_lie_group('R3').dim == 3
    with pytest.raises(ValueError):
        builtin_lie_group('Sp4')


@pytest.mark.parametrize('module', ['su2_module', 'cover_module'])
def test_lie_crossed_modules_validate(module, request):
    cm = request.getfixturevalue(module)
    rng = np.random.default_rng(1)
    assert validate_crossed_module(cm, 'sampled', samples=100, rng=rng).passed
    assert check_categorical_group(cm, 'sampled', samples=50, rng=rng).passed
    assert validate_algebra_maps(cm, samples=50, rng=rng).passed


def test_exhaustive_request_on_lie_module_samples(su2_module):
    report = validate_crossed_module(su2_module, 'exhaustive', samples=20)
    assert report.extras['mode'] == 'sampled'


@settings(max_examples=25)
@given(small_vectors, small_vectors)
def test_differentiated_peiffer_identity(x, y):
    R = so3.exp(y)
    assert np.allclose(tau_star(cover, alpha_star(cover, R, x)), so3.Ad(R, tau_star(cover, x)),
                       atol=1e-12)
