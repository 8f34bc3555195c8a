import numpy as np
import pytest

from cathaul.algebra.catgroup import CatGroupMorphism, cg_target
from cathaul.bundle.transport import horizontal_lift, parallel_transport
from cathaul.catbundle.checks import Battery, check_CC
from cathaul.catbundle.connections import CatConnection, conn_lift_dec, conn_pushforward_dec, conn_standard
from cathaul.catbundle.morphisms import (DecMorphism, dec_act, dec_compose, dec_source, dec_target, functor_Sdec,
                                         pp_compose, pp_distance)
from cathaul.catbundle.pushforward import (conn_pushforward_general, identity_pair, sdec_pair, structure_group_pair,
                                           well_definedness)
from cathaul.catbundle.spaces import DecoratedBundle
from cathaul.exceptions import NotComposable
from cathaul.lie.crossed_modules import so3_cover_module
from cathaul.paths.families import arc, line


def lifted(testbed):
    return conn_lift_dec(testbed.connection, testbed.cm)


def test_cc_battery_passes_for_every_flavor(testbed, small_battery):
    lift_dec = lifted(testbed)
    connections = [conn_standard(testbed.connection), lift_dec, conn_pushforward_dec(lift_dec),
                   conn_pushforward_general(lift_dec, sdec_pair(lift_dec.space))]
    for conn in connections:
        report = check_CC(conn, small_battery, cc3_tol=1e-6, threads=2)
        assert report.passed, report.failures()
        assert [entry.id for entry in report.entries] == ['CC1', 'CC2', 'CC3']
        assert report.extras['pairs'] == 2


def test_cc_report_names_a_witness(testbed, small_battery):
    report = check_CC(conn_standard(testbed.connection), small_battery)
    assert all(entry.witness for entry in report.entries)
    assert report.to_dict()['entries'][0]['axiom'] == 'CC1'


def test_empty_battery_is_rejected(testbed):
    with pytest.raises(ValueError):
        check_CC(conn_standard(testbed.connection), Battery())


def test_unknown_flavor_is_rejected(testbed):
    with pytest.raises(ValueError):
        CatConnection(lifted(testbed).space, lambda gamma, p: None, 'mystery')


def test_decorated_bundle_needs_matching_group(testbed):
    with pytest.raises(ValueError):
        DecoratedBundle(so3_cover_module(), testbed.connection)


def test_action_moves_source_and_target(testbed, rng):
    cm = testbed.cm
    gamma = testbed.reference_path(100)
    m = DecMorphism(horizontal_lift(testbed.connection, gamma, testbed.bundle.point(gamma.start)),
                    cm.H.sample(rng, 1)[0])
    phi = CatGroupMorphism(cm.H.sample(rng, 1)[0], cm.G.sample(rng, 1)[0])
    moved = dec_act(cm, m, phi)
    assert dec_source(cm, moved).distance(dec_source(cm, m).act(phi.g)) < 1e-12
    assert dec_target(cm, moved).distance(dec_target(cm, m).act(cg_target(cm, phi))) < 1e-12


def test_decorated_composition_and_functor(testbed, rng):
    cm, A = testbed.cm, testbed.connection
    first = line([-0.5, 0.0], [0.0, 0.0], 100)
    second = arc([0.0, 0.3], 0.3, -np.pi / 2, 0.0, 100)
    h1, h2 = cm.H.sample(rng, 2)
    m1 = DecMorphism(horizontal_lift(A, first, testbed.bundle.point(first.start)), h1)
    m2 = DecMorphism(horizontal_lift(A, second, dec_target(cm, m1)), h2)
    composed = dec_compose(cm, m2, m1)
    assert dec_source(cm, composed).distance(dec_source(cm, m1)) < 1e-12
    assert dec_target(cm, composed).distance(dec_target(cm, m2)) < 1e-12
    images = pp_compose(functor_Sdec(cm, m2), functor_Sdec(cm, m1))
    assert pp_distance(functor_Sdec(cm, composed), images) < 1e-12
    with pytest.raises(NotComposable):
        dec_compose(cm, m1, m2)


def test_sdec_pair_is_a_bundle_morphism(testbed, rng):
    lift_dec = lifted(testbed)
    space = lift_dec.space
    pair = sdec_pair(space)
    points = testbed.bundle.sample_points(rng, 5)
    gamma = testbed.reference_path(100)
    morphisms = [DecMorphism(horizontal_lift(testbed.connection, gamma, testbed.bundle.point(gamma.start, p.g)), h)
                 for p, h in zip(points, testbed.cm.H.sample(rng, 5))]
    report = pair.validate(morphisms, points, testbed.cm.G.sample(rng, 5), space.sample_group_morphisms(rng, 5))
    assert report.passed, report.failures()


def test_pushforward_does_not_depend_on_representative(testbed, rng):
    lift_dec = lifted(testbed)
    pair = sdec_pair(lift_dec.space)
    gamma = testbed.reference_path(100)
    q = testbed.bundle.point(gamma.start, testbed.cm.G.sample(rng, 1)[0])
    assert well_definedness(lift_dec, pair, gamma, q, testbed.cm.G.sample(rng, 3)) < 1e-9


def test_identity_pair_round_trip(testbed, rng):
    standard = conn_standard(testbed.connection)
    round_trip = conn_pushforward_general(standard, identity_pair(standard.space))
    gamma = testbed.reference_path(100)
    q = testbed.bundle.point(gamma.start, testbed.cm.G.sample(rng, 1)[0])
    assert pp_distance(round_trip.lift(gamma, q), standard.lift(gamma, q)) < 1e-12


def test_structure_group_pushforward_is_classical(testbed, rng):
    A = testbed.connection
    structure = testbed.structure_pushforward
    standard = conn_standard(A)
    pair = structure_group_pair(standard.space, structure.target, structure.hom)
    pushed = conn_pushforward_general(standard, pair)
    classical = A.pushed_forward(structure.target, structure.hom_star)
    gamma = testbed.reference_path(200)
    q = classical.bundle.point(gamma.start, structure.target.sample(rng, 1)[0])
    assert pushed.lift(gamma, q).p1.distance(parallel_transport(classical, gamma, q)) < 1e-9
