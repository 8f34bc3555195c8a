import logging

import numpy as np

from cathaul.bundle.connection import ConnectionForm
from cathaul.bundle.transport import horizontal_lift
from cathaul.gauge.checks import (gauge_check_axioms, gengauge_candidate, gengauge_transport_check,
                                  induced_pushforward_morphism)
from cathaul.gauge.forms import DecorationForm, IdentityGauge
from cathaul.gauge.transform import CatGaugeTransform, compose_gauge, functorial_gauge, transformed_connection
from cathaul.models.report import Report
from cathaul.suites.base import Suite
from cathaul.suites.convergence import add_slope
from cathaul.suites.fixtures import Fixture

logger = logging.getLogger(__name__)

# the non-equivariant θ must miss equivariance by at least this much
NEGATIVE_CONTROL_GAP = 1e-2
NEGATIVE_CONTROL_SAMPLES = 32


class GaugeSuite(Suite):
    """Gauge axioms, transport of A-lifts to A′-lifts and the induced pushforward"""

    name = 'gauge'

    def run(self, fixture: Fixture) -> Report:
        fixture.require_bundle()
        if fixture.gauge is None:
            fixture.gauge = CatGaugeTransform.identity(fixture.cm, fixture.bundle.base_dim)
            logger.warning(f"Fixture {fixture.name} defines no gauge; checking the identity transformation")
        config = self.config
        A, transform = fixture.connection, fixture.gauge
        report = Report(self.name)
        report.extras['gauge'] = transform.to_dict()

        axioms = gauge_check_axioms(transform, A, self.battery(fixture), config.order,
                                    algebraic_tol=config.algebraic_tol, ode_tol=config.tolerance(config.ode_tol),
                                    functor_tol=config.tolerance(config.ode_tol), threads=config.threads,
                                    seed=config.seed)
        report.merge(axioms, 'axioms')
        if not transform.functorial:
            self._functorial(fixture, report)
        if not isinstance(transform.theta, IdentityGauge):
            self._negative_control(fixture, report)

        self._transport(fixture, report)
        self._special_cases(fixture, report)

        path, p0 = self.start_point(fixture, config.n_steps)
        induced = induced_pushforward_morphism(A, transform, path, p0, config.order,
                                               tol=config.tolerance(config.gauge_tol),
                                               algebraic_tol=config.algebraic_tol)
        report.merge(induced.report, 'induced_pushforward')

        self._identity_transform(fixture, report)
        self._composition(fixture, report)
        return report

    def _functorial(self, fixture: Fixture, report: Report):
        """The compatible decoration of the same θ̄ makes Θ preserve targets and compose"""
        config = self.config
        A, transform = fixture.connection, fixture.gauge
        try:
            compatible = functorial_gauge(A, transform.theta, transform.cm, name=f'{transform.name}_compatible')
        except ValueError as e:
            logger.info(f"Skipping functorial gauge axioms: {e}")
            return
        axioms = gauge_check_axioms(compatible, A, self.battery(fixture), config.order,
                                    algebraic_tol=config.algebraic_tol, ode_tol=config.tolerance(config.ode_tol),
                                    threads=config.threads, seed=config.seed)
        report.merge(axioms, 'axioms.functorial')

    def _negative_control(self, fixture: Fixture, report: Report):
        """θ_(x,g) = θ̄(x) has to be caught by the equivariance check"""
        config = self.config
        transform = fixture.gauge
        G = transform.cm.G
        broken = transform.theta.broken()
        rng = np.random.default_rng(config.seed)
        points = fixture.bundle.sample_points(rng, NEGATIVE_CONTROL_SAMPLES)
        elements = G.sample(rng, NEGATIVE_CONTROL_SAMPLES)
        worst = max(G.distance(broken.theta(p.act(a)), G.inv(a) @ broken.theta(p) @ a)
                    for p, a in zip(points, elements))
        logger.info(f"Non-equivariant θ violates equivariance by {worst:.3e}")
        report.add('negative_control.theta_equivariance_gap', max(0.0, NEGATIVE_CONTROL_GAP - worst), 0.0,
                   witness=f'violation={worst:.3e}')

    def _transport(self, fixture: Fixture, report: Report):
        config = self.config
        A, transform = fixture.connection, fixture.gauge
        grids = config.grids()
        tol = config.tolerance(config.gauge_tol)
        horizontality, endpoint = [], []
        check = None
        for n in grids:
            path, p0 = self.start_point(fixture, n)
            check = gengauge_transport_check(A, transform, path, p0, config.order, tol=tol)
            horizontality.append(check.residual('horizontality'))
            endpoint.append(check.residual('endpoint'))
            if n == config.n_steps:
                self.path = gengauge_candidate(A, transform, path, p0, config.order)
        report.merge(check, 'gengauge')
        target = config.slope_target * config.order / 2
        add_slope(report, 'gengauge.horizontality', grids, horizontality, target, config.slope_window)
        add_slope(report, 'gengauge.endpoint', grids, endpoint, target, config.slope_window)

    def _special_cases(self, fixture: Fixture, report: Report):
        """λ ≡ 0 is a classical gauge transformation, θ̄ ≡ e a pure shift"""
        config = self.config
        A, transform = fixture.connection, fixture.gauge
        cm, d = transform.cm, transform.base_dim
        cases = (
            CatGaugeTransform(cm, transform.theta, DecorationForm.zero(cm, d), name='classical'),
            CatGaugeTransform(cm, IdentityGauge(cm.G, d), transform.decoration, name='shift')
        )
        path, p0 = self.start_point(fixture, config.n_steps)
        for case in cases:
            check = gengauge_transport_check(A, case, path, p0, config.order, tol=config.tolerance(config.gauge_tol))
            report.merge(check, f'gengauge_{case.name}')

    def _identity_transform(self, fixture: Fixture, report: Report):
        A = fixture.connection
        identity = CatGaugeTransform.identity(fixture.cm, fixture.bundle.base_dim)
        x = np.array([p.x for p in fixture.bundle.sample_points(np.random.default_rng(self.config.seed), 100)])
        gap = _coefficient_gap(transformed_connection(A, identity), A, x)
        report.add('identity_transform', gap, 1e-12)

    def _composition(self, fixture: Fixture, report: Report):
        """Transforming by Θ twice against transforming once by Θ∘Θ"""
        config = self.config
        A, transform = fixture.connection, fixture.gauge
        twice = transformed_connection(transformed_connection(A, transform), transform)
        composite = transformed_connection(A, compose_gauge(transform, transform))
        rng = np.random.default_rng(config.seed)
        x = np.array([p.x for p in fixture.bundle.sample_points(rng, 100)])
        report.add('composition.coefficients', _coefficient_gap(twice, composite, x), config.algebraic_tol)

        path, p0 = self.start_point(fixture, config.n_steps)
        gap = horizontal_lift(twice, path, p0, config.order).end.distance(
            horizontal_lift(composite, path, p0, config.order).end)
        report.add('composition.endpoint', gap, config.tolerance(config.gauge_tol))


def _coefficient_gap(first: ConnectionForm, second: ConnectionForm, x: np.ndarray) -> float:
    return max(float(np.abs(first.coefficients(point) - second.coefficients(point)).max()) for point in x)
