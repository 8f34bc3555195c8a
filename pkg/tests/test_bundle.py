import numpy as np
import pytest

from cathaul.bundle.connection import BundlePath, ConnectionForm, connection_eval, vertical_vector
from cathaul.bundle.fields import CoefficientField, LinearField, TrigonometricField, field_from_descriptor
from cathaul.bundle.transport import (horizontal_lift, horizontality_defect, horizontality_residual,
                                      parallel_transport, shifted_lift, shifted_transport)
from cathaul.exceptions import FixtureError, NotComposable, NotHorizontalInput, OutOfDomain
from cathaul.paths.families import arc, line, square_loop
from cathaul.suites.convergence import fit_slope, self_convergence


def random_point(fixture, seed=0):
    rng = np.random.default_rng(seed)
    return fixture.bundle.sample_points(rng, 1)[0]


def test_linear_field_jacobian_matches_finite_differences(rng):
    field = LinearField(rng.normal(size=(2, 3)), rng.normal(size=(2, 3, 2)))
    x = rng.uniform(-1, 1, size=2)
    assert np.allclose(field.jacobian(x), CoefficientField.jacobian(field, x), atol=1e-8)


def test_trigonometric_field_jacobian_matches_finite_differences(rng):
    field = TrigonometricField(rng.normal(size=(2, 3)), rng.normal(size=(2, 3, 2)), rng.normal(size=(2, 3)))
    x = rng.uniform(-1, 1, size=2)
    assert np.allclose(field.jacobian(x), CoefficientField.jacobian(field, x), atol=1e-8)


def test_field_shape_is_checked():
    with pytest.raises(FixtureError):
        field_from_descriptor({'family': 'constant', 'value': [[1.0, 0.0, 0.0]]}, 2, 3)
    with pytest.raises(FixtureError):
        field_from_descriptor({'family': 'quadratic'}, 2, 3)


def test_vertical_normalization(testbed, rng):
    A = testbed.connection
    for p in testbed.bundle.sample_points(rng, 10):
        xi = rng.uniform(-1, 1, size=3)
        assert np.allclose(connection_eval(A, p, *vertical_vector(p, xi, A.group)), xi, atol=1e-12)


def test_connection_eval_outside_box(testbed):
    p = testbed.bundle.point([2.0, 0.0])
    with pytest.raises(OutOfDomain):
        connection_eval(testbed.connection, p, [1.0, 0.0])


def test_flat_abelian_lift_is_exact(flat_fixture):
    A = flat_fixture.connection
    G = A.group
    p0 = random_point(flat_fixture)
    gamma = line(p0.x, [0.4, 0.2], 200)
    lift = horizontal_lift(A, gamma, p0)
    dx = gamma.end - gamma.start
    expected = G.exp(np.array([-(0.4 * dx[0] + 0.3 * dx[1]), 0.0, 0.0])) @ p0.g
    assert np.allclose(lift.end.g, expected, atol=1e-12)


def test_flat_holonomy_is_trivial(flat_fixture):
    A = flat_fixture.connection
    corner = np.array([-0.2, -0.1])
    p0 = flat_fixture.bundle.point(corner)
    q = parallel_transport(A, square_loop(corner, 0.5, 200), p0)
    assert q.distance(p0) < 1e-12
    assert np.allclose(A.curvature(corner), 0.0)


def test_lift_is_right_equivariant(testbed, rng):
    A = testbed.connection
    p0 = random_point(testbed)
    gamma = testbed.reference_path(200)
    g = A.group.sample(rng, 1)[0]
    moved = horizontal_lift(A, gamma, testbed.bundle.point(gamma.start, p0.g @ g))
    assert moved.distance(horizontal_lift(A, gamma, testbed.bundle.point(gamma.start, p0.g)).act(g)) < 1e-12


def test_lift_stays_in_group(testbed):
    lift = horizontal_lift(testbed.connection, testbed.reference_path(200), random_point(testbed))
    assert max(testbed.bundle.group.membership_residual(g) for g in lift.fiber) < 1e-12


def test_lift_is_horizontal(testbed):
    A = testbed.connection
    gamma = testbed.reference_path(400)
    lift = horizontal_lift(A, gamma, testbed.bundle.point(gamma.start))
    assert horizontality_residual(A, lift).max() < 1e-3
    assert horizontality_defect(A, lift).max() < 1e-10


@pytest.mark.parametrize('order', [2, 4])
def test_lift_converges(testbed, order):
    A = testbed.connection
    grids = [200, 400, 800]
    endpoints = []
    for n in grids:
        gamma = testbed.reference_path(n)
        endpoints.append(parallel_transport(A, gamma, testbed.bundle.point(gamma.start), order).g)
    gaps = self_convergence(endpoints)
    assert gaps[-1] < gaps[0]
    if order == 2:
        assert 1.6 < fit_slope(grids[:-1], gaps) < 2.4


def test_shifted_lift_matches_direct_lift(testbed):
    A, C = testbed.connection, testbed.shift
    gamma = testbed.reference_path(400)
    p0 = testbed.bundle.point(gamma.start)
    corrected = shifted_lift(A, C, gamma, p0)
    direct = horizontal_lift(A.shifted(C), gamma, p0)
    assert corrected.end.distance(direct.end) < 1e-4
    assert horizontality_defect(A.shifted(C), corrected).max() < 1e-4


def test_shifted_transport_rejects_non_horizontal_input(testbed):
    gamma = line([-0.5, 0.0], [0.5, 0.0], 100)
    G = testbed.bundle.group
    still = BundlePath(gamma, np.repeat(G.identity[None], gamma.n_steps + 1, axis=0), G)
    with pytest.raises(NotHorizontalInput):
        shifted_transport(testbed.connection, testbed.shift, still)


def test_lift_outside_box_is_rejected(testbed):
    gamma = line([0.0, 0.0], [1.5, 0.0], 50)
    with pytest.raises(OutOfDomain):
        horizontal_lift(testbed.connection, gamma, testbed.bundle.point(gamma.start))


def test_bundle_paths_compose(testbed):
    A = testbed.connection
    first = line([-0.5, 0.0], [0.0, 0.0], 100)
    second = arc([0.0, 0.3], 0.3, -np.pi / 2, 0.0, 100)
    head = horizontal_lift(A, first, testbed.bundle.point(first.start))
    tail = horizontal_lift(A, second, head.end)
    whole = tail.compose(head)
    assert whole.n_steps == 200
    assert whole.end.distance(tail.end) == 0.0
    with pytest.raises(NotComposable):
        head.compose(tail)


def test_pushed_forward_connection_shapes(testbed):
    structure = testbed.structure_pushforward
    pushed = testbed.connection.pushed_forward(structure.target, structure.hom_star)
    assert isinstance(pushed, ConnectionForm)
    assert pushed.group.name == 'SO3'
    assert np.allclose(pushed.coefficients([0.1, 0.2]), testbed.connection.coefficients([0.1, 0.2]))


def test_bundle_path_csv(testbed, tmp_path):
    gamma = line([-0.5, 0.0], [0.5, 0.0], 10)
    lift = horizontal_lift(testbed.connection, gamma, testbed.bundle.point(gamma.start))
    filename = tmp_path / 'lift.csv'
    lift.write_csv(filename)
    header = filename.read_text().splitlines()[0].split(',')
    assert header[:3] == ['t', 'x1', 'x2']
    assert 're_g11' in header and 'im_g22' in header
    assert len(header) == 3 + 8
