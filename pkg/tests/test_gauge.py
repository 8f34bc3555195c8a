import numpy as np
import pytest

from cathaul.algebra.crossed_module import CrossedModule
from cathaul.bundle.fields import TrigonometricField
from cathaul.bundle.transport import horizontal_lift
from cathaul.catbundle.checks import standard_battery
from cathaul.catbundle.morphisms import DecMorphism, dec_source, dec_target
from cathaul.exceptions import FixtureError
from cathaul.gauge.checks import gauge_check_axioms, gengauge_transport_check, induced_pushforward_morphism
from cathaul.gauge.forms import (ConstantGauge, DecorationForm, ExpLinearGauge, GaugeMap, IdentityGauge,
                                 decoration_from_descriptor, gauge_from_descriptor)
from cathaul.gauge.transform import (CatGaugeTransform, compatible_decoration, compose_gauge, decoration_ode,
                                     functorial_gauge, gauge_apply_morphism, gauge_apply_object,
                                     transformed_connection)
from cathaul.lie.groups import SU2, U1
from cathaul.paths.families import arc, line

FD_STEP = 1e-6


def second_transform(cm):
    theta = ExpLinearGauge(cm.G, 2, [0.1, 0.2, -0.3], [[0.2, -0.1], [0.0, 0.3], [0.25, 0.1]])
    lam = TrigonometricField([[0.05, 0.1, 0.0], [0.1, 0.0, -0.1]], np.full((2, 3, 2), 0.7))
    return CatGaugeTransform(cm, theta, DecorationForm(cm, lam), name='Theta2')


def test_exp_linear_derivative_matches_finite_differences(testbed, rng):
    theta = testbed.gauge.theta
    x = rng.uniform(-0.8, 0.8, size=2)
    for mu in range(2):
        step = np.zeros(2)
        step[mu] = FD_STEP
        fd = (theta.value(x + step) - theta.value(x - step)) / (2 * FD_STEP)
        assert np.allclose(theta.derivative(x)[mu], fd, atol=1e-8)


class ValueOnlyGauge(GaugeMap):
    family = 'value_only'

    def __init__(self, inner):
        super().__init__(inner.group, inner.base_dim)
        self.inner = inner

    def value(self, x):
        return self.inner.value(x)


def test_default_derivative_uses_central_differences(testbed, rng):
    theta = testbed.gauge.theta
    plain = ValueOnlyGauge(theta)
    x = rng.uniform(-0.8, 0.8, size=(5, 2))
    assert plain.derivative(x).shape == theta.derivative(x).shape
    assert np.allclose(plain.derivative(x), theta.derivative(x), atol=1e-8)
    assert np.allclose(plain.right_log_derivative(x), theta.right_log_derivative(x), atol=1e-8)


def test_constant_gauge_has_no_log_derivative():
    theta = ConstantGauge(SU2(), 2, [0.3, -0.2, 0.5])
    assert np.allclose(theta.right_log_derivative(np.array([0.1, 0.4])), 0.0)


def test_theta_is_equivariant_and_broken_theta_is_not(testbed, rng):
    theta = testbed.gauge.theta
    G = theta.group
    p = testbed.bundle.sample_points(rng, 1)[0]
    a = G.sample(rng, 1)[0]
    assert G.distance(theta.theta(p.act(a)), G.inv(a) @ theta.theta(p) @ a) < 1e-12
    broken = theta.broken()
    assert G.distance(broken.theta(p.act(a)), G.inv(a) @ broken.theta(p) @ a) > 1e-2


def test_identity_transform_leaves_connection_unchanged(testbed, rng):
    identity = CatGaugeTransform.identity(testbed.cm, 2)
    A = testbed.connection
    transformed = transformed_connection(A, identity)
    xs = rng.uniform(-0.9, 0.9, size=(20, 2))
    assert np.abs(transformed.coefficients(xs) - A.coefficients(xs)).max() < 1e-14
    p = testbed.bundle.sample_points(rng, 1)[0]
    assert gauge_apply_object(identity, p).distance(p) == 0.0


def test_literal_reading_agrees_when_theta_is_trivial(testbed, rng):
    cm = testbed.cm
    shift_only = CatGaugeTransform(cm, IdentityGauge(cm.G, 2), testbed.gauge.decoration)
    xs = rng.uniform(-0.9, 0.9, size=(10, 2))
    literal = transformed_connection(testbed.connection, shift_only, literal=True).coefficients(xs)
    pulled = transformed_connection(testbed.connection, shift_only).coefficients(xs)
    assert np.allclose(literal, pulled, atol=1e-14)
    assert np.allclose(pulled, testbed.connection.coefficients(xs) + testbed.gauge.decoration.coefficients(xs))


def test_transforming_twice_equals_composite(testbed, rng):
    first, second = testbed.gauge, second_transform(testbed.cm)
    A = testbed.connection
    xs = rng.uniform(-0.9, 0.9, size=(20, 2))
    twice = transformed_connection(transformed_connection(A, first), second).coefficients(xs)
    once = transformed_connection(A, compose_gauge(second, first)).coefficients(xs)
    assert np.abs(twice - once).max() < 1e-10


def test_decoration_ode_is_multiplicative(testbed):
    A, decoration = testbed.connection, testbed.gauge.decoration
    H = decoration.cm.H
    first = line([-0.5, 0.0], [0.0, 0.0], 100)
    second = arc([0.0, 0.3], 0.3, -np.pi / 2, 0.0, 100)
    head = horizontal_lift(A, first, testbed.bundle.point(first.start))
    tail = horizontal_lift(A, second, head.end)
    whole = decoration_ode(decoration, tail.compose(head)).end
    parts = H.mul(decoration_ode(decoration, tail).end, decoration_ode(decoration, head).end)
    assert H.distance(whole, parts) < 1e-12


def test_zero_decoration_gives_trivial_label(testbed):
    gamma = testbed.reference_path(100)
    lift = horizontal_lift(testbed.connection, gamma, testbed.bundle.point(gamma.start))
    h = decoration_ode(DecorationForm.zero(testbed.cm, 2), lift)
    assert np.allclose(h.values, np.eye(2))


def test_gauge_moves_source_to_transformed_point(testbed, rng):
    cm, transform = testbed.cm, testbed.gauge
    gamma = testbed.reference_path(100)
    p = testbed.bundle.point(gamma.start, cm.G.sample(rng, 1)[0])
    m = DecMorphism(horizontal_lift(testbed.connection, gamma, p), cm.H.sample(rng, 1)[0])
    image = gauge_apply_morphism(transform, m)
    assert dec_source(cm, image).distance(gauge_apply_object(transform, p)) < 1e-12
    assert np.array_equal(image.lift.base.samples, gamma.samples)


def test_gauge_axioms_hold_on_testbed(testbed, small_battery):
    report = gauge_check_axioms(testbed.gauge, testbed.connection, small_battery, threads=2)
    assert report.passed, report.failures()
    assert not report.extras['functorial']
    assert 'diagnostic.target_preservation' in report.extras


def test_compatible_decoration_preserves_targets(cover_fixture):
    transform = cover_fixture.gauge
    assert transform.functorial
    battery = standard_battery(cover_fixture.bundle, 400, seed=5, lines=2, arcs=2, l_composites=2)
    report = gauge_check_axioms(transform, cover_fixture.connection, battery, functor_tol=1e-3, tol_join=1e-3)
    assert report.passed, report.failures()
    assert report.entry('target_preservation').residual < 1e-3

    cm = cover_fixture.cm
    gamma = cover_fixture.reference_path(400)
    p = cover_fixture.bundle.point(gamma.start)
    m = DecMorphism(horizontal_lift(cover_fixture.connection, gamma, p), cm.H.identity)
    image = gauge_apply_morphism(transform, m)
    assert dec_target(cm, image).distance(gauge_apply_object(transform, dec_target(cm, m))) < 1e-3


def test_functorial_gauge_on_testbed_composes(testbed):
    transform = functorial_gauge(testbed.connection, testbed.gauge.theta, testbed.cm)
    battery = standard_battery(testbed.bundle, 400, seed=5, lines=2, arcs=2, l_composites=2)
    report = gauge_check_axioms(transform, testbed.connection, battery, ode_tol=1e-4)
    assert report.passed, report.failures()
    assert report.entry('composition').tolerance == 1e-4
    assert report.entry('target_preservation').residual < 1e-5
    assert report.entry('composition').residual < 1e-5


def test_compatible_decoration_needs_invertible_tau_star(testbed):
    G, H = SU2(), U1()
    cm = CrossedModule(G, H, lambda g, h: h, lambda h: G.identity, name='degenerate',
                       alpha_star=lambda g, x: np.array(x, dtype=float),
                       tau_star=lambda x: np.zeros(np.shape(x)[:-1] + (3,)))
    with pytest.raises(ValueError):
        compatible_decoration(testbed.connection, testbed.gauge.theta, cm)


def test_transported_candidate_is_transformed_lift(testbed):
    gamma = testbed.reference_path(400)
    p0 = testbed.bundle.point(gamma.start)
    report = gengauge_transport_check(testbed.connection, testbed.gauge, gamma, p0, tol=1e-3)
    assert report.passed, report.failures()
    assert report.residual('initial_point') < 1e-12


def test_identity_gauge_transport_endpoint_is_exact(identity_fixture):
    gamma = identity_fixture.reference_path(400)
    p0 = identity_fixture.bundle.point(gamma.start)
    report = gengauge_transport_check(identity_fixture.connection, identity_fixture.gauge, gamma, p0, tol=1e-3)
    assert report.passed, report.failures()
    assert report.residual('endpoint') < 1e-12
    # finite-difference velocities leave a discretization residual even on exact lifts
    assert 1e-12 < report.residual('horizontality') < 1e-3
    assert report.extras['horizontality_defect'] < 1e-12


def test_horizontality_residual_shrinks_with_the_grid(testbed):
    residuals = []
    for n in (200, 400, 800):
        gamma = testbed.reference_path(n)
        p0 = testbed.bundle.point(gamma.start)
        report = gengauge_transport_check(testbed.connection, testbed.gauge, gamma, p0, tol=1e-2)
        residuals.append(report.residual('horizontality'))
    assert residuals[0] > residuals[1] > residuals[2]
    assert residuals[1] / residuals[2] > 3.0


def test_induced_pushforward_cross_checks(testbed):
    gamma = testbed.reference_path(400)
    p0 = testbed.bundle.point(gamma.start)
    induced = induced_pushforward_morphism(testbed.connection, testbed.gauge, gamma, p0, tol=1e-3)
    assert induced.report.passed, induced.report.failures()
    assert induced.morphism.gamma is gamma


def test_descriptors():
    cm_G = SU2()
    assert isinstance(gauge_from_descriptor({'family': 'identity'}, cm_G, 2), IdentityGauge)
    with pytest.raises(FixtureError):
        gauge_from_descriptor({'family': 'wavelet'}, cm_G, 2)
    with pytest.raises(FixtureError):
        gauge_from_descriptor({'family': 'exp_linear', 'offset': [0.0, 0.0, 0.0]}, cm_G, 2)


def test_missing_decoration_is_zero(testbed):
    decoration = decoration_from_descriptor(None, testbed.cm, 2)
    assert decoration.name == 'zero'
    assert np.allclose(decoration.coefficients(np.zeros(2)), 0.0)
