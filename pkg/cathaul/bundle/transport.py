import logging
from typing import Optional

import numpy as np

from cathaul.bundle.connection import BundlePath, BundlePoint, ConnectionForm, ShiftForm, check_base_point
from cathaul.bundle.integrators import integrate, step_increments
from cathaul.exceptions import NotHorizontalInput
from cathaul.paths.sampled_path import GroupPath, SampledPath

logger = logging.getLogger(__name__)


def horizontal_lift(A: ConnectionForm, gamma: SampledPath, p0: BundlePoint, order: int = 2) -> BundlePath:
    """Lift of γ through p0 solving g′ = -a(γ′)g; base samples are copied"""
    check_base_point(p0, gamma.start)
    A.bundle.check_domain(gamma.samples)

    def generator(x, v, g):
        return A.base_value(x, v)

    fiber = integrate(A.group, generator, gamma, p0.g, order=order)
    return BundlePath(gamma, fiber, A.group)


def parallel_transport(A: ConnectionForm, gamma: SampledPath, p0: BundlePoint, order: int = 2) -> BundlePoint:
    return horizontal_lift(A, gamma, p0, order).end


def matrix_derivatives(values: np.ndarray, dt: float, order: int = 2) -> np.ndarray:
    """Time derivatives of a stack of matrices with the path stencils"""
    n = values.shape[0] - 1
    if n == 0 or dt == 0:
        return np.zeros_like(values)
    if order == 4 and n >= 4:
        padded = np.concatenate([values[:1], values[:1], values, values[-1:], values[-1:]])
        return (padded[:-4] - 8 * padded[1:-3] + 8 * padded[3:-1] - padded[4:]) / (12 * dt)
    out = np.empty_like(values)
    if n == 1:
        out[:] = (values[1] - values[0]) / dt
        return out
    out[1:-1] = (values[2:] - values[:-2]) / (2 * dt)
    out[0] = (-3 * values[0] + 4 * values[1] - values[2]) / (2 * dt)
    out[-1] = (3 * values[-1] - 4 * values[-2] + values[-3]) / (2 * dt)
    return out


def horizontality_residual(A: ConnectionForm, path: BundlePath, order: int = 2) -> np.ndarray:
    """‖A(path′)‖ at every sample"""
    G = A.group
    v_x = path.base.derivatives(order)
    g_dot = matrix_derivatives(path.fiber, path.base.dt, order)
    xi = G.vee(g_dot @ G.inv(path.fiber))
    value = A.base_value(path.base.samples, v_x) + xi
    return np.linalg.norm(G.Ad(G.inv(path.fiber), value), axis=-1)


def horizontality_defect(A: ConnectionForm, path: BundlePath, order: int = 2) -> np.ndarray:
    """Per-step mismatch ‖log(g_{n+1}g_n⁻¹) - Ω_n‖/Δt against the A-integrator increments

    Vanishes up to rounding on A-lifts; for any sampled horizontal path it is
    O(Δt^order).
    """
    G = A.group
    if path.n_steps == 0 or path.base.dt == 0:
        return np.zeros(path.n_steps)

    def generator(x, v, g):
        return A.base_value(x, v)

    omega = step_increments(G, generator, path.base, None, order)
    omega[np.all(np.diff(path.base.samples, axis=0) == 0, axis=1)] = 0.0
    steps = G.log(path.fiber[1:] @ G.inv(path.fiber[:-1]))
    return np.linalg.norm(steps - omega, axis=-1) / path.base.dt


def shifted_transport(A: ConnectionForm, C: ShiftForm, lift: BundlePath, tol: Optional[float] = 1e-3,
                      order: int = 2) -> GroupPath:
    """ξ with ξ′ξ⁻¹ = -C(γ̃′), ξ(t0) = e; γ̃ξ is then (A + C)-horizontal

    The input is checked against `tol` unless tol is None.
    """
    residual = float(horizontality_residual(A, lift, order).max()) if tol is not None else 0.0
    if tol is not None and residual > tol:
        raise NotHorizontalInput(f"Path is not {A.name}-horizontal: residual {residual:.3e} > {tol:.1e}")
    G = A.group

    def generator(x, v, g):
        return G.Ad(G.inv(g), C.base_value(x, v))

    xi = integrate(G, generator, lift.base, G.identity, fiber=lift.fiber, order=order)
    return GroupPath(lift.base.t0, lift.base.t1, xi, G)


def shifted_lift(A: ConnectionForm, C: ShiftForm, gamma: SampledPath, p0: BundlePoint,
                 order: int = 2, tol: Optional[float] = 1e-3) -> BundlePath:
    """γ̃ξ: the A-lift corrected by the shifted transport"""
    lift = horizontal_lift(A, gamma, p0, order)
    xi = shifted_transport(A, C, lift, tol, order)
    return lift.left_act(xi.values)
