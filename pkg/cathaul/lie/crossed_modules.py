import logging
from typing import Optional

import numpy as np

from cathaul.algebra.crossed_module import CrossedModule, _Worst
from cathaul.lie.groups import SO3, SU2, MatrixLieGroup, matrix_quaternion, quaternion_matrix
from cathaul.models.report import ValidationReport

logger = logging.getLogger(__name__)

FD_STEP = 1e-6


def su2_adjoint_module(group: Optional[SU2] = None) -> CrossedModule:
    """(SU(2), SU(2), conjugation, identity)"""
    G = group or SU2()
    return CrossedModule(G, G, G.conj, lambda h: h, name='su2_adjoint',
                         alpha_star=G.Ad, tau_star=lambda x: np.array(x, dtype=float))


def so3_cover_module() -> CrossedModule:
    """(SO(3), SU(2), lifted conjugation, double cover)

    α_R rotates the quaternion vector part by R, which is conjugation by either
    lift of R. In the shared coordinates τ_* is the identity and α_*(R, x) = Rx.
    """
    G, H = SO3(), SU2()

    def alpha(R, U):
        a0, v = matrix_quaternion(U)
        return quaternion_matrix(a0, np.einsum('...ij,...j->...i', R, v))

    return CrossedModule(G, H, alpha, H.rotation, name='so3_cover',
                         alpha_star=lambda R, x: np.einsum('...ij,...j->...i', R, x),
                         tau_star=lambda x: np.array(x, dtype=float))


def tau_star(cm: CrossedModule, x) -> np.ndarray:
    """Differential of τ at the identity, in algebra coordinates"""
    if cm.tau_star is not None:
        return cm.tau_star(x)
    return _tau_star_fd(cm, x)


def alpha_star(cm: CrossedModule, g, x) -> np.ndarray:
    """Differential of α_g at the identity of H"""
    if cm.alpha_star is not None:
        return cm.alpha_star(g, x)
    return _alpha_star_fd(cm, g, x)


def _tau_star_fd(cm: CrossedModule, x) -> np.ndarray:
    G, H = cm.G, cm.H
    x = np.asarray(x, dtype=float)
    forward = G.log(cm.tau(H.exp(FD_STEP * x)))
    backward = G.log(cm.tau(H.exp(-FD_STEP * x)))
    return (forward - backward) / (2 * FD_STEP)


def _alpha_star_fd(cm: CrossedModule, g, x) -> np.ndarray:
    H = cm.H
    x = np.asarray(x, dtype=float)
    if np.ndim(g) > 2:
        xs = np.broadcast_to(x, np.shape(g)[:-2] + x.shape[-1:])
        return np.stack([_alpha_star_fd(cm, item, v) for item, v in zip(g, xs)])
    forward = H.log(cm.alpha(g, H.exp(FD_STEP * x)))
    backward = H.log(cm.alpha(g, H.exp(-FD_STEP * x)))
    return (forward - backward) / (2 * FD_STEP)


def validate_algebra_maps(cm: CrossedModule, samples: int = 200,
                          rng: Optional[np.random.Generator] = None) -> ValidationReport:
    """Closed-form τ_*, α_* against finite differences, plus the differentiated Peiffer identity"""
    rng = rng if rng is not None else np.random.default_rng(42)
    G, H = cm.G, cm.H
    if not isinstance(G, MatrixLieGroup) or not isinstance(H, MatrixLieGroup):
        raise TypeError(f"{cm.name} is not a Lie crossed module")
    xs = rng.uniform(-1.0, 1.0, size=(samples, H.dim))
    ys = rng.uniform(-1.0, 1.0, size=(samples, H.dim))
    gs = G.sample(rng, samples)

    tau_fd = _Worst(1e-6)
    alpha_fd = _Worst(1e-6)
    peiffer = _Worst(1e-8)
    bracket = _Worst(1e-8)
    identity = _Worst(1e-12)
    for g, x, y in zip(gs, xs, ys):
        tau_fd.update(float(np.linalg.norm(tau_star(cm, x) - _tau_star_fd(cm, x))), lambda: f'x={x}')
        alpha_fd.update(float(np.linalg.norm(alpha_star(cm, g, x) - _alpha_star_fd(cm, g, x))),
                        lambda: f'g={G.describe(g)}, x={x}')
        peiffer.update(float(np.linalg.norm(tau_star(cm, alpha_star(cm, g, x)) - G.Ad(g, tau_star(cm, x)))),
                       lambda: f'g={G.describe(g)}, x={x}')
        bracket.update(float(np.linalg.norm(tau_star(cm, H.bracket(x, y))
                                            - G.bracket(tau_star(cm, x), tau_star(cm, y)))),
                       lambda: f'x={x}, y={y}')
        identity.update(float(np.linalg.norm(alpha_star(cm, G.identity, x) - x)), lambda: f'x={x}')

    report = ValidationReport(f'algebra-maps:{cm.name}')
    for check, worst in (('tau_star_finite_difference', tau_fd), ('alpha_star_finite_difference', alpha_fd),
                         ('peiffer_1_differential', peiffer), ('tau_star_bracket', bracket),
                         ('alpha_star_identity', identity)):
        report.add(check, worst.value, worst.tolerance, worst.witness)
    return report
