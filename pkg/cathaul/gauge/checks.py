import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

from cathaul.algebra.catgroup import CatGroupMorphism
from cathaul.algebra.crossed_module import _Worst
from cathaul.bundle.connection import BundlePath, BundlePoint, ConnectionForm, ShiftForm
from cathaul.bundle.fields import DerivedField
from cathaul.bundle.transport import horizontal_lift, horizontality_defect, horizontality_residual, shifted_lift
from cathaul.catbundle.checks import Battery
from cathaul.catbundle.morphisms import (DecMorphism, PPMorphism, dec_act, dec_compose, dec_distance, dec_target,
                                         functor_Sdec, path_distance, pp_distance)
from cathaul.exceptions import NotComposable
from cathaul.gauge.transform import (CatGaugeTransform, decoration_label, decoration_ode, gauge_apply_morphism,
                                     gauge_apply_object, transformed_connection)
from cathaul.lie.crossed_modules import tau_star
from cathaul.models.report import AxiomReport, CheckReport
from cathaul.paths.sampled_path import SampledPath

logger = logging.getLogger(__name__)

ITEM_CHECKS = ('theta_equivariance', 'decoration_equivariance', 'label_right_action', 'action_commutation',
               'projection', 'target_preservation')
ALGEBRAIC_CHECKS = ('theta_equivariance', 'label_right_action', 'projection')


def _item_residuals(transform: CatGaugeTransform, A: ConnectionForm, gamma: SampledPath, p: BundlePoint,
                    a, h, b, order: int) -> Dict[str, float]:
    cm = transform.cm
    G, H = cm.G, cm.H
    lift = horizontal_lift(A, gamma, p, order)
    h_lift = decoration_ode(transform.decoration, lift, order).end
    theta_p = transform.theta.theta(p)
    m = DecMorphism(lift, h)
    image = gauge_apply_morphism(transform, m, order, h_lift)
    phi = CatGroupMorphism(b, a)

    label = decoration_label(transform, m, order, h_lift)
    shifted_label = decoration_label(transform, DecMorphism(lift, H.mul(h, b)), order, h_lift)
    return {
        'theta_equivariance': G.distance(transform.theta.theta(p.act(a)), G.inv(a) @ theta_p @ a),
        'decoration_equivariance': H.distance(decoration_ode(transform.decoration, lift.act(a), order).end,
                                              cm.alpha(G.inv(a), h_lift)),
        'label_right_action': H.distance(shifted_label, H.mul(label, cm.alpha(theta_p, b))),
        'action_commutation': dec_distance(cm, gauge_apply_morphism(transform, dec_act(cm, m, phi), order),
                                           dec_act(cm, image, phi)),
        'projection': path_distance(image.lift.base, m.lift.base),
        'target_preservation': dec_target(cm, image).distance(gauge_apply_object(transform, dec_target(cm, m)))
    }


def _pair_residuals(transform: CatGaugeTransform, A: ConnectionForm, first: SampledPath, second: SampledPath,
                    p: BundlePoint, h1, h2, order: int, tol_join: float) -> Dict[str, float]:
    cm = transform.cm
    H = cm.H
    lift1 = horizontal_lift(A, first, p, order)
    lift2 = horizontal_lift(A, second, lift1.end, order)

    def hode(path):
        return decoration_ode(transform.decoration, path, order).end

    multiplicativity = H.distance(hode(lift2.compose(lift1)), H.mul(hode(lift2), hode(lift1)))

    m1 = DecMorphism(lift1, h1)
    m2 = DecMorphism(horizontal_lift(A, second, dec_target(cm, m1), order), h2)
    whole = gauge_apply_morphism(transform, dec_compose(cm, m2, m1), order)
    try:
        parts = dec_compose(cm, gauge_apply_morphism(transform, m2, order),
                            gauge_apply_morphism(transform, m1, order), tol_join)
        composition = dec_distance(cm, whole, parts)
    except NotComposable as e:
        logger.debug(f"Gauge images do not compose: {e}")
        composition = float('inf')
    return {'decoration_multiplicativity': multiplicativity, 'composition': composition}


def gauge_check_axioms(transform: CatGaugeTransform, A: ConnectionForm, battery: Battery, order: int = 2,
                       algebraic_tol: float = 1e-10, ode_tol: float = 1e-6, functor_tol: Optional[float] = None,
                       tol_join: float = 1e-4, threads: int = 1, seed: int = 42,
                       name: Optional[str] = None) -> AxiomReport:
    """Worst residuals of the gauge axioms over a battery

    Target preservation and composition are hard checks only for functorial
    data, at functor_tol (ode_tol when unset); otherwise they are reported as
    diagnostics in extras.
    """
    if len(battery) == 0:
        raise ValueError("gauge_check_axioms needs a nonempty battery")
    functor_tol = ode_tol if functor_tol is None else functor_tol
    cm = transform.cm
    rng = np.random.default_rng(seed)
    items = list(battery.items())
    hs = cm.H.sample(rng, len(items))
    bs = cm.H.sample(rng, len(items))
    pair_hs = cm.H.sample(rng, 2 * len(battery.pairs)) if battery.pairs else []
    pair_points = [BundlePoint(first.start, p.g) for (_, first, _), p in zip(battery.pairs, battery.points)]
    logger.info(f"Checking gauge axioms of {transform.name} on {len(items)} paths and {len(battery.pairs)} pairs")

    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        item_jobs = [executor.submit(_item_residuals, transform, A, gamma, p, a, h, b, order)
                     for (_, gamma, p, a), h, b in zip(items, hs, bs)]
        pair_jobs = [executor.submit(_pair_residuals, transform, A, first, second, p,
                                     pair_hs[2 * i], pair_hs[2 * i + 1], order, tol_join)
                     for i, ((_, first, second), p) in enumerate(zip(battery.pairs, pair_points))]
        item_results = [job.result() for job in item_jobs]
        pair_results = [job.result() for job in pair_jobs]

    def tolerance(check):
        if check in ALGEBRAIC_CHECKS:
            return algebraic_tol
        if check in ('target_preservation', 'composition'):
            return functor_tol
        return ode_tol

    worst = {check: _Worst(tolerance(check)) for check in ITEM_CHECKS + ('decoration_multiplicativity', 'composition')}
    for (path_id, _, _, _), result in zip(items, item_results):
        for check, value in result.items():
            worst[check].update(value, lambda: path_id)
    for (pair_id, _, _), result in zip(battery.pairs, pair_results):
        for check, value in result.items():
            worst[check].update(value, lambda: pair_id)

    report = AxiomReport(name or f'gauge-axioms:{transform.name}')
    hard = ('theta_equivariance', 'decoration_equivariance', 'label_right_action', 'decoration_multiplicativity',
            'action_commutation', 'projection')
    if transform.functorial:
        hard += ('target_preservation', 'composition')
    for check in hard:
        if check == 'decoration_multiplicativity' and not battery.pairs:
            continue
        if check == 'composition' and not battery.pairs:
            continue
        report.add(check, worst[check].value, worst[check].tolerance, worst[check].witness)
    if not transform.functorial:
        report.extras['diagnostic.target_preservation'] = float(worst['target_preservation'].value)
        composition = worst['composition'].value
        report.extras['diagnostic.composition'] = None if not np.isfinite(composition) else float(composition)
    report.extras['functorial'] = transform.functorial
    report.extras['paths'] = len(items)
    report.extras['pairs'] = len(battery.pairs)
    logger.info(f"Gauge axioms of {transform.name}: pass={report.passed}")
    return report


def _candidate(transform: CatGaugeTransform, lift: BundlePath, h_values: np.ndarray) -> BundlePath:
    cm = transform.cm
    G = cm.G
    theta_values = transform.theta.theta_at(lift.base.samples, lift.fiber)
    theta_p = transform.theta.theta(lift.start)
    fiber = lift.fiber @ theta_values @ cm.tau(h_values) @ G.inv(theta_p)
    return BundlePath(lift.base, fiber, G)


def gengauge_candidate(A: ConnectionForm, transform: CatGaugeTransform, gamma: SampledPath, p0: BundlePoint,
                       order: int = 2) -> BundlePath:
    """γ̃(t)θ_γ̃(t)τ(h(t))θ_p0⁻¹ with γ̃ the A-lift through p0 and h the decoration ODE"""
    lift = horizontal_lift(A, gamma, p0, order)
    return _candidate(transform, lift, decoration_ode(transform.decoration, lift, order).values)


def gengauge_transport_check(A: ConnectionForm, transform: CatGaugeTransform, gamma: SampledPath,
                             p0: BundlePoint, order: int = 2, tol: float = 1e-5, literal: bool = False,
                             name: Optional[str] = None) -> CheckReport:
    """The candidate starts at p0, is A′-horizontal and ends where the A′-lift ends

    Horizontality is max ‖A′(candidate′)‖ with finite-difference velocities;
    the per-step defect against the A′ integrator is kept in extras.
    """
    candidate = gengauge_candidate(A, transform, gamma, p0, order)
    transformed = transformed_connection(A, transform, literal)
    direct = horizontal_lift(transformed, gamma, p0, order)

    report = CheckReport(name or f'gengauge:{transform.name}')
    report.add('initial_point', candidate.start.distance(p0), 1e-12)
    report.add('horizontality', float(horizontality_residual(transformed, candidate, order).max()), tol)
    report.add('endpoint', candidate.end.distance(direct.end), tol)
    defect = horizontality_defect(transformed, candidate, order)
    report.extras['n_steps'] = gamma.n_steps
    report.extras['literal'] = literal
    report.extras['horizontality_defect'] = float(defect.max()) if defect.size else 0.0
    return report


@dataclass
class InducedPushforward:
    """𝕊(Θ(γ̃; e)), the conjugated transport q·τ(h_γ̃) and the cross-checks"""
    morphism: PPMorphism
    transport: BundlePoint
    report: CheckReport


def induced_pushforward_morphism(A: ConnectionForm, transform: CatGaugeTransform, gamma: SampledPath,
                                 p0: BundlePoint, order: int = 2, tol: float = 1e-6,
                                 algebraic_tol: float = 1e-10) -> InducedPushforward:
    """Push Θ(γ̃_p; e) down to P•• and cross-check it against three independent routes"""
    cm = transform.cm
    G = cm.G
    lift = horizontal_lift(A, gamma, p0, order)
    h_values = decoration_ode(transform.decoration, lift, order).values
    h_lift = h_values[-1]
    image = gauge_apply_morphism(transform, DecMorphism(lift, cm.H.identity), order, h_lift)
    morphism = functor_Sdec(cm, image)

    q = lift.end
    theta_p = transform.theta.theta(p0)
    shifted_end = q.act(cm.tau(h_lift))
    expected = PPMorphism(q.act(cm.tau(h_lift) @ theta_p), p0.act(theta_p), gamma)

    lam = transform.decoration.coefficients
    shift = ShiftForm(A.bundle, DerivedField(lambda x: tau_star(cm, lam(x)), lam.base_dim, G.dim,
                                             f'tau_* {transform.decoration.name}'), name='tau*Lambda')
    shifted = shifted_lift(A, shift, gamma, p0, order, tol=None)
    candidate_end = _candidate(transform, lift, h_values).end
    direct = horizontal_lift(transformed_connection(A, transform), gamma, p0, order)

    report = CheckReport(f'induced-pushforward:{transform.name}')
    report.add('closed_form', pp_distance(morphism, expected), algebraic_tol)
    report.add('shifted_transport_agreement', shifted.end.distance(shifted_end), tol)
    report.add('candidate_consistency',
               candidate_end.distance(gauge_apply_object(transform, shifted_end).act(G.inv(theta_p))), algebraic_tol)
    report.add('transformed_lift_agreement', candidate_end.distance(direct.end), tol)
    return InducedPushforward(morphism, shifted_end, report)
