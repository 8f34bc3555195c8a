import logging

import numpy as np

from cathaul.algebra.crossed_module import _Worst
from cathaul.bundle.connection import BundlePoint
from cathaul.catbundle.checks import Battery, check_CC
from cathaul.catbundle.connections import conn_lift_dec, conn_pushforward_dec, conn_standard
from cathaul.catbundle.morphisms import (DecMorphism, dec_compose, dec_target, functor_Sdec, pp_compose,
                                         pp_distance)
from cathaul.catbundle.pushforward import (conn_pushforward_general, identity_pair, sdec_pair,
                                           structure_group_pair, well_definedness)
from cathaul.exceptions import CathaulError
from cathaul.models.report import Report
from cathaul.suites.base import Suite
from cathaul.suites.fixtures import Fixture

logger = logging.getLogger(__name__)

# fiber representatives per battery path for the well-definedness spread
REPRESENTATIVES = 3


class PushforwardSuite(Suite):
    """General pushforward against its decorated specialization, well-definedness and functoriality of 𝕊"""

    name = 'pushforward'

    def run(self, fixture: Fixture) -> Report:
        fixture.require_bundle()
        config = self.config
        report = Report(self.name)
        battery = self.battery(fixture)
        lift_dec = conn_lift_dec(fixture.connection, fixture.cm, config.order)
        pair = sdec_pair(lift_dec.space)

        self._specialization(lift_dec, pair, battery, report)
        self._functor(fixture, lift_dec, pair, battery, report)
        self._round_trip(fixture, battery, report)
        if fixture.structure_pushforward is not None:
            self._structure(fixture, battery, report)
        return report

    def _specialization(self, lift_dec, pair, battery: Battery, report: Report):
        config = self.config
        G = lift_dec.space.group
        rng = np.random.default_rng(config.seed)
        general = conn_pushforward_general(lift_dec, pair)
        direct = conn_pushforward_dec(lift_dec)

        agreement = _Worst(config.algebraic_tol)
        spread = _Worst(config.join_tol)
        for path_id, gamma, q, _ in battery.items():
            agreement.update(pp_distance(general.lift(gamma, q), direct.lift(gamma, q)), lambda: path_id)
            spread.update(well_definedness(lift_dec, pair, gamma, q, G.sample(rng, REPRESENTATIVES)),
                          lambda: path_id)
        report.add('specialization', agreement.value, agreement.tolerance, agreement.witness)
        report.add('well_definedness', spread.value, spread.tolerance, spread.witness)
        logger.info(f"Pushforward specialization residual {agreement.value:.3e}, spread {spread.value:.3e}")

    def _functor(self, fixture: Fixture, lift_dec, pair, battery: Battery, report: Report):
        """(functor_Sdec, functor_S) on random decorated morphisms and composable pairs"""
        config = self.config
        cm, space = fixture.cm, lift_dec.space
        rng = np.random.default_rng(config.seed + 1)
        count = config.lie_samples
        lifts = [lift_dec.lift(gamma, p).lift for _, gamma, p, _ in battery.items()]
        decorations = cm.H.sample(rng, count)
        morphisms = [DecMorphism(lifts[i % len(lifts)], decorations[i]) for i in range(count)]
        points = fixture.bundle.sample_points(rng, count)
        elements = cm.G.sample(rng, count)
        report.merge(pair.validate(morphisms, points, elements, space.sample_group_morphisms(rng, count),
                                   tol=config.algebraic_tol), 'functor_Sdec')

        composition = _Worst(config.algebraic_tol)
        for (pair_id, first, second), p, h in zip(battery.pairs, battery.points, decorations):
            m1 = DecMorphism(lift_dec.lift(first, BundlePoint(first.start, p.g)).lift, h)
            m2 = DecMorphism(lift_dec.lift(second, dec_target(cm, m1)).lift, cm.H.inv(h))
            try:
                residual = pp_distance(functor_Sdec(cm, dec_compose(cm, m2, m1)),
                                       pp_compose(functor_Sdec(cm, m2), functor_Sdec(cm, m1)))
            except CathaulError as e:
                logger.warning(f"Composable pair {pair_id} failed to compose: {str(e)}")
                residual = float('inf')
            composition.update(residual, lambda: pair_id)
        if battery.pairs:
            report.add('functor_Sdec.composition', composition.value, composition.tolerance, composition.witness)

    def _round_trip(self, fixture: Fixture, battery: Battery, report: Report):
        """Identity-pair pushforward of conn_standard reproduces it"""
        config = self.config
        standard = conn_standard(fixture.connection, config.order)
        pushed = conn_pushforward_general(standard, identity_pair(standard.space))
        worst = _Worst(config.join_tol)
        for path_id, gamma, q, _ in battery.items():
            worst.update(pp_distance(pushed.lift(gamma, q), standard.lift(gamma, q)), lambda: path_id)
        report.add('round_trip', worst.value, worst.tolerance, worst.witness)

    def _structure(self, fixture: Fixture, battery: Battery, report: Report):
        """Pushforward along s: G → K against the classical s_*A"""
        config = self.config
        A = fixture.connection
        spec = fixture.structure_pushforward
        rng = np.random.default_rng(config.seed + 2)
        standard = conn_standard(A, config.order)
        pair = structure_group_pair(standard.space, spec.target, spec.hom)
        pushed = conn_pushforward_general(standard, pair)
        classical = conn_standard(A.pushed_forward(spec.target, spec.hom_star), config.order)

        agreement = _Worst(config.tolerance(config.ode_tol))
        for path_id, gamma, p, _ in battery.items():
            q = pair.obj_map(p)
            agreement.update(pp_distance(pushed.lift(gamma, q), classical.lift(gamma, q)), lambda: path_id)
        report.add('structure.classical_agreement', agreement.value, agreement.tolerance, agreement.witness)

        count = min(config.lie_samples, len(battery))
        items = list(battery.items())[:count]
        morphisms = [standard.lift(gamma, p) for _, gamma, p, _ in items]
        report.merge(pair.validate(morphisms, fixture.bundle.sample_points(rng, count),
                                   fixture.bundle.group.sample(rng, count),
                                   standard.space.sample_group_morphisms(rng, count),
                                   tol=config.algebraic_tol), 'structure.pair')

        # the same battery seen from the K-bundle
        image = Battery(battery.paths, [pair.obj_map(p) for p in battery.points],
                        [spec.hom(g) for g in battery.elements], battery.pairs)
        report.merge(check_CC(pushed, image, cc1_tol=config.algebraic_tol, cc2_tol=config.algebraic_tol,
                              cc3_tol=config.tolerance(config.ode_tol), threads=config.threads), 'structure.cc')
