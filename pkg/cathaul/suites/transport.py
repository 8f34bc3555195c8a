import logging

import numpy as np

from cathaul.algebra.crossed_module import _Worst
from cathaul.bundle.connection import connection_eval, vertical_vector
from cathaul.bundle.transport import (horizontal_lift, horizontality_defect, horizontality_residual,
                                      parallel_transport, shifted_lift)
from cathaul.catbundle.checks import check_CC
from cathaul.catbundle.connections import conn_lift_dec, conn_pushforward_dec, conn_standard
from cathaul.catbundle.pushforward import conn_pushforward_general, sdec_pair
from cathaul.gauge.transform import conn_decorated
from cathaul.models.report import Report
from cathaul.paths.families import square_loop
from cathaul.suites.base import Suite
from cathaul.suites.convergence import add_slope, self_convergence
from cathaul.suites.fixtures import Fixture

logger = logging.getLogger(__name__)

LOOP_FRACTION = 0.02


class TransportSuite(Suite):
    """Connection-form properties, horizontal lifts, shifted transport and CC1-CC3 batteries"""

    name = 'transport'

    def run(self, fixture: Fixture) -> Report:
        fixture.require_bundle()
        report = Report(self.name)
        self._connection_properties(fixture, report)
        self._lift_convergence(fixture, report)
        if fixture.bundle.base_dim >= 2:
            self._small_loop(fixture, report)
        if fixture.shift is not None:
            self._shifted(fixture, report)
        self._categorical(fixture, report)
        return report

    def _connection_properties(self, fixture: Fixture, report: Report):
        """Vertical normalization and Ad-equivariance of A on random draws"""
        config = self.config
        A, bundle = fixture.connection, fixture.bundle
        G = bundle.group
        rng = np.random.default_rng(config.seed)
        count = config.lie_samples
        points = bundle.sample_points(rng, count)
        elements = G.sample(rng, count)
        v_xs = rng.uniform(-1.0, 1.0, size=(count, bundle.base_dim))
        xis = rng.uniform(-1.0, 1.0, size=(count, G.dim))

        normalization = _Worst(config.algebraic_tol)
        equivariance = _Worst(config.algebraic_tol)
        for i, (p, g, v_x, xi) in enumerate(zip(points, elements, v_xs, xis)):
            vertical = vertical_vector(p, xi, G)
            normalization.update(float(np.linalg.norm(connection_eval(A, p, *vertical) - xi)), lambda: f'draw[{i}]')
            # right-translated fiber velocity is invariant under p ↦ pg
            moved = connection_eval(A, p.act(g), v_x, xi)
            expected = G.Ad(G.inv(g), connection_eval(A, p, v_x, xi))
            equivariance.update(float(np.linalg.norm(moved - expected)), lambda: f'draw[{i}]')
        report.add('connection.vertical_normalization', normalization.value, normalization.tolerance,
                   normalization.witness)
        report.add('connection.equivariance', equivariance.value, equivariance.tolerance, equivariance.witness)

    def _lift_convergence(self, fixture: Fixture, report: Report):
        config = self.config
        A = fixture.connection
        grids = config.grids()
        residuals, endpoints = [], []
        for n in grids:
            path, p0 = self.start_point(fixture, n)
            lift = horizontal_lift(A, path, p0, config.order)
            residuals.append(float(horizontality_residual(A, lift, config.order).max()))
            endpoints.append(lift.end.g)
            if n == config.n_steps:
                self.path = lift
        logger.info(f"Lift horizontality residuals over N={grids}: {residuals}")
        target = config.slope_target * config.order / 2
        report.add('lift.horizontality', residuals[-1], config.tolerance(config.gauge_tol))
        add_slope(report, 'lift.horizontality', grids, residuals, target, config.slope_window)
        add_slope(report, 'lift.endpoint', grids[:-1], self_convergence(endpoints), target, config.slope_window)

    def _small_loop(self, fixture: Fixture, report: Report):
        """‖log Hol‖ of a small square against ε²‖F₁₂‖ at its centre

        The norm is conjugation invariant, so the corner base point only
        enters at O(ε⁴).
        """
        config = self.config
        A, bundle = fixture.connection, fixture.bundle
        G = bundle.group
        center = (bundle.lower + bundle.upper) / 2
        side = LOOP_FRACTION * float((bundle.upper - bundle.lower)[:2].min())
        corner = center.copy()
        corner[:2] -= side / 2
        loop = square_loop(corner, side, config.n_steps)
        holonomy = parallel_transport(A, loop, bundle.point(corner), config.order).g
        observed = float(np.linalg.norm(G.log(holonomy)))
        predicted = side ** 2 * float(np.linalg.norm(A.curvature(center)[0, 1]))
        report.add('holonomy.small_loop', abs(observed - predicted) / side ** 2, 10 * side,
                   witness=f'observed={observed:.6e}, predicted={predicted:.6e}')

    def _shifted(self, fixture: Fixture, report: Report):
        """γ̃ξ against the (A + C)-integrator and the direct (A + C)-lift"""
        config = self.config
        A, C = fixture.connection, fixture.shift
        shifted_form = A.shifted(C)
        grids = config.grids()
        defects, gaps = [], []
        for n in grids:
            path, p0 = self.start_point(fixture, n)
            corrected = shifted_lift(A, C, path, p0, config.order, config.horizontal_tol)
            defects.append(float(horizontality_defect(shifted_form, corrected, config.order).max()))
            direct = horizontal_lift(shifted_form, path, p0, config.order)
            gaps.append(corrected.end.distance(direct.end))
        tol = config.tolerance(config.ode_tol)
        target = config.slope_target * config.order / 2
        report.add('shifted.horizontality', defects[-1], tol)
        report.add('shifted.endpoint', gaps[-1], tol)
        add_slope(report, 'shifted.horizontality', grids, defects, target, config.slope_window)
        add_slope(report, 'shifted.endpoint', grids, gaps, target, config.slope_window)

    def _categorical(self, fixture: Fixture, report: Report):
        config = self.config
        A, cm = fixture.connection, fixture.cm
        battery = self.battery(fixture)
        lift_dec = conn_lift_dec(A, cm, config.order)
        connections = [
            conn_standard(A, config.order),
            lift_dec,
            conn_pushforward_dec(lift_dec),
            conn_pushforward_general(lift_dec, sdec_pair(lift_dec.space))
        ]
        if fixture.gauge is not None:
            decorated = conn_decorated(A, fixture.gauge.decoration, config.order)
            connections += [decorated, conn_pushforward_dec(decorated)]
        for conn in connections:
            cc = check_CC(conn, battery, cc1_tol=config.algebraic_tol, cc2_tol=config.algebraic_tol,
                          cc3_tol=config.tolerance(config.ode_tol), threads=config.threads)
            report.merge(cc, f'cc.{conn.name}')
            logger.info(f"CC battery for {conn.name}: pass={cc.passed}")
