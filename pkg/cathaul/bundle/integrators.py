"""Runge–Kutta–Munthe-Kaas integrators for linear ODEs y′ = -Φ(x, x′, g)·y on a
matrix group, driven by a sampled base path x(t) and optionally a fiber path
g(t) sampled on the same grid.

Order 2 is the exponential midpoint rule, y_{n+1} = exp(-Φ(x_mid, Δx, g_mid)) y_n.
Order 4 is RKMK4 with the dexp⁻¹ series truncated after the second bracket.
Steps whose base increment is exactly zero leave y unchanged.
"""
import logging
from typing import Callable, Optional

import numpy as np

from cathaul.lie.groups import MatrixLieGroup
from cathaul.paths.sampled_path import SampledPath

logger = logging.getLogger(__name__)

# Φ(x, v, g) -> algebra coordinates, linear in v, batched over the leading axis
Generator = Callable[[np.ndarray, np.ndarray, Optional[np.ndarray]], np.ndarray]


def midpoints(values: np.ndarray) -> np.ndarray:
    return (values[:-1] + values[1:]) / 2


def cubic_midpoints(values: np.ndarray) -> np.ndarray:
    """(-x_{n-1} + 9x_n + 9x_{n+1} - x_{n+2})/16 on an edge-padded array"""
    padded = np.concatenate([values[:1], values, values[-1:]])
    return (-padded[:-3] + 9 * padded[1:-2] + 9 * padded[2:-1] - padded[3:]) / 16


def cubic_mid_derivatives(values: np.ndarray, dt: float) -> np.ndarray:
    """(x_{n-1} - 27x_n + 27x_{n+1} - x_{n+2})/(24h) on an edge-padded array"""
    padded = np.concatenate([values[:1], values, values[-1:]])
    return (padded[:-3] - 27 * padded[1:-2] + 27 * padded[2:-1] - padded[3:]) / (24 * dt)


def fiber_midpoints(group: MatrixLieGroup, fiber: np.ndarray, order: int = 2) -> np.ndarray:
    """Half-step fiber values, interpolated in the algebra relative to the left sample"""
    base = fiber[:-1]
    inv = group.inv(base)
    if order == 2 or fiber.shape[0] < 4:
        return group.project(base @ group.exp(0.5 * group.log(inv @ fiber[1:])))
    padded = np.concatenate([fiber[:1], fiber, fiber[-1:]])
    y_prev = group.log(inv @ padded[:-3])
    y_next = group.log(inv @ padded[2:-1])
    y_far = group.log(inv @ padded[3:])
    local = (-y_prev + 9 * y_next - y_far) / 16
    return group.project(base @ group.exp(local))


def dexpinv(group: MatrixLieGroup, u, v) -> np.ndarray:
    """v - ½[u, v] + (1/12)[u, [u, v]]"""
    uv = group.bracket(u, v)
    return v - 0.5 * uv + group.bracket(u, uv) / 12


def step_increments(group: MatrixLieGroup, generator: Generator, path: SampledPath,
                    fiber: Optional[np.ndarray] = None, order: int = 2,
                    fiber_group: Optional[MatrixLieGroup] = None) -> np.ndarray:
    """Ω_n with y_{n+1} = exp(Ω_n) y_n, shape (N, k); the fiber lives in fiber_group (default: group)"""
    fiber_group = fiber_group or group
    x = path.samples
    dx = np.diff(x, axis=0)
    if order == 2:
        g_mid = fiber_midpoints(fiber_group, fiber, 2) if fiber is not None else None
        return -generator(midpoints(x), dx, g_mid)
    if order != 4:
        raise ValueError(f"Unsupported integrator order {order}")

    h = path.dt
    v_nodes = path.derivatives(order=4)
    x_half = cubic_midpoints(x)
    v_half = cubic_mid_derivatives(x, h)
    g_nodes = fiber
    g_half = fiber_midpoints(fiber_group, fiber, 4) if fiber is not None else None
    start = -generator(x[:-1], h * v_nodes[:-1], None if g_nodes is None else g_nodes[:-1])
    half = -generator(x_half, h * v_half, g_half)
    end = -generator(x[1:], h * v_nodes[1:], None if g_nodes is None else g_nodes[1:])

    k1 = start
    k2 = dexpinv(group, k1 / 2, half)
    k3 = dexpinv(group, k2 / 2, half)
    k4 = dexpinv(group, k3, end)
    return (k1 + 2 * k2 + 2 * k3 + k4) / 6


def integrate(group: MatrixLieGroup, generator: Generator, path: SampledPath, y0,
              fiber: Optional[np.ndarray] = None, order: int = 2,
              fiber_group: Optional[MatrixLieGroup] = None) -> np.ndarray:
    """Solve y′ = -Φ(x, x′, g) y with y(t0) = y0; returns the (N+1, n, n) stack"""
    y0 = np.asarray(y0)
    values = np.empty((path.n_steps + 1,) + y0.shape, dtype=np.result_type(y0, group.dtype))
    values[0] = y0
    if path.n_steps == 0:
        return values
    omega = step_increments(group, generator, path, fiber, order, fiber_group)
    frozen = np.all(np.diff(path.samples, axis=0) == 0, axis=1)
    steps = group.exp(omega)
    y = y0
    for n in range(path.n_steps):
        if not frozen[n]:
            y = group.project(steps[n] @ y)
        values[n + 1] = y
    return values
