"""Sampled paths on uniform time grids with sitting ends."""
import logging
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from cathaul.exceptions import EmptyPath, EndpointMismatch, IndexOutOfRange, NotSitting

logger = logging.getLogger(__name__)

FROZEN_TOL = 1e-12
JOIN_TOL = 1e-9


def default_sit(n_steps: int) -> int:
    """Frozen samples at each end for an n_steps grid"""
    return max(2, n_steps // 50)


def smootherstep(s):
    """35s⁴ - 84s⁵ + 70s⁶ - 20s⁷; flat to third order at 0 and 1"""
    s = np.asarray(s, dtype=float)
    return s ** 4 * (35 - 84 * s + 70 * s ** 2 - 20 * s ** 3)


def smootherstep_rate(s):
    s = np.asarray(s, dtype=float)
    return 140 * s ** 3 * (1 - s) ** 3


@dataclass(frozen=True)
class SittingClock:
    """Reparametrization [0, 1] → [0, 1], constant on the first and last `sit` steps"""
    n_steps: int
    sit: int

    @property
    def window(self) -> float:
        return self.sit / self.n_steps if self.n_steps else 0.0

    def _inner(self, u):
        w = self.window
        return np.clip((np.asarray(u, dtype=float) - w) / (1 - 2 * w), 0.0, 1.0)

    def __call__(self, u):
        return smootherstep(self._inner(u))

    def rate(self, u):
        """ds/du"""
        return smootherstep_rate(self._inner(u)) / (1 - 2 * self.window)

    def grid(self) -> np.ndarray:
        return self(np.linspace(0.0, 1.0, self.n_steps + 1))


@dataclass(frozen=True, eq=False)
class SampledPath:
    """N+1 points in ℝᵈ at uniform times over [t0, t1]"""
    t0: float
    t1: float
    samples: np.ndarray
    sit: int = 0
    resampled: bool = field(default=False, compare=False)

    def __post_init__(self):
        samples = np.array(self.samples, dtype=float)
        if samples.size == 0:
            raise EmptyPath("A sampled path needs at least one sample")
        if samples.ndim == 1:
            samples = samples[:, None]
        if not np.all(np.isfinite(samples)):
            raise ValueError("Path samples must be finite")
        n_steps = samples.shape[0] - 1
        if self.t1 < self.t0 or (n_steps == 0 and self.t1 != self.t0):
            raise ValueError(f"Invalid time interval [{self.t0}, {self.t1}] for {n_steps} steps")
        if self.sit < 0 or n_steps < 2 * self.sit:
            raise ValueError(f"Path with {n_steps} steps cannot sit for {self.sit} steps at each end")
        if self.sit:
            head = np.abs(samples[:self.sit + 1] - samples[0]).max()
            tail = np.abs(samples[-self.sit - 1:] - samples[-1]).max()
            if max(head, tail) > FROZEN_TOL:
                raise ValueError(f"Sitting ends are not frozen (drift {max(head, tail):.2e})")
        samples.setflags(write=False)
        object.__setattr__(self, 'samples', samples)

    def __repr__(self):
        return f'<SampledPath [{self.t0:g}, {self.t1:g}] N={self.n_steps} d={self.dim} sit={self.sit}>'

    @property
    def n_steps(self) -> int:
        return self.samples.shape[0] - 1

    @property
    def dim(self) -> int:
        return self.samples.shape[1]

    @property
    def duration(self) -> float:
        return self.t1 - self.t0

    @property
    def dt(self) -> float:
        return self.duration / self.n_steps if self.n_steps else 0.0

    @property
    def start(self) -> np.ndarray:
        return self.samples[0]

    @property
    def end(self) -> np.ndarray:
        return self.samples[-1]

    @property
    def times(self) -> np.ndarray:
        return np.linspace(self.t0, self.t1, self.n_steps + 1)

    @property
    def is_point(self) -> bool:
        return bool(np.all(self.samples == self.samples[0]))

    def derivative(self, i: int) -> np.ndarray:
        """Tangent at sample i: central inside, second-order one-sided at the ends"""
        if not 0 <= i <= self.n_steps:
            raise IndexOutOfRange(f"Sample index {i} outside 0..{self.n_steps}")
        x, n = self.samples, self.n_steps
        if n == 0 or self.dt == 0:
            return np.zeros(self.dim)
        if n == 1:
            return (x[1] - x[0]) / self.dt
        if i == 0:
            return (-3 * x[0] + 4 * x[1] - x[2]) / (2 * self.dt)
        if i == n:
            return (3 * x[n] - 4 * x[n - 1] + x[n - 2]) / (2 * self.dt)
        return (x[i + 1] - x[i - 1]) / (2 * self.dt)

    def derivatives(self, order: int = 2) -> np.ndarray:
        """All tangents; order 4 uses five-point stencils on an edge-padded array"""
        x, n = self.samples, self.n_steps
        if n == 0 or self.dt == 0:
            return np.zeros_like(x)
        if order == 4 and n >= 4:
            padded = np.pad(x, ((2, 2), (0, 0)), mode='edge')
            return (padded[:-4] - 8 * padded[1:-3] + 8 * padded[3:-1] - padded[4:]) / (12 * self.dt)
        out = np.empty_like(x)
        out[1:-1] = (x[2:] - x[:-2]) / (2 * self.dt)
        if n == 1:
            out[:] = (x[1] - x[0]) / self.dt
            return out
        out[0] = (-3 * x[0] + 4 * x[1] - x[2]) / (2 * self.dt)
        out[-1] = (3 * x[-1] - 4 * x[-2] + x[-3]) / (2 * self.dt)
        return out

    def translated(self, shift: float) -> 'SampledPath':
        return SampledPath(self.t0 + shift, self.t1 + shift, self.samples, self.sit, self.resampled)

    def normalized(self) -> 'SampledPath':
        """Representative of the time-translation class with t0 = 0"""
        return self.translated(-self.t0)

    def reversed(self) -> 'SampledPath':
        return SampledPath(self.t0, self.t1, self.samples[::-1], self.sit, self.resampled)

    def to_rows(self) -> np.ndarray:
        return np.column_stack([self.times, self.samples])


@dataclass(frozen=True, eq=False)
class GroupPath:
    """N+1 group elements (matrices) at uniform times over [t0, t1]"""
    t0: float
    t1: float
    values: np.ndarray
    group: object = field(repr=False, default=None)

    def __post_init__(self):
        values = np.array(self.values)
        if values.ndim != 3 or values.shape[0] == 0:
            raise EmptyPath("A group path needs a stack of at least one matrix")
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    def __repr__(self):
        return f'<GroupPath [{self.t0:g}, {self.t1:g}] N={self.n_steps}>'

    @property
    def n_steps(self) -> int:
        return self.values.shape[0] - 1

    @property
    def start(self) -> np.ndarray:
        return self.values[0]

    @property
    def end(self) -> np.ndarray:
        return self.values[-1]

    @property
    def times(self) -> np.ndarray:
        return np.linspace(self.t0, self.t1, self.n_steps + 1)

    def coordinates(self) -> np.ndarray:
        """Algebra coordinates of every sample (principal log)"""
        return self.group.log(self.values)


def sample_function(f: Callable[[np.ndarray], np.ndarray], n_steps: int, duration: float = 1.0,
                    t0: float = 0.0, sit: Optional[int] = None, sitting: bool = True) -> SampledPath:
    """Sample s ↦ f(s), s ∈ [0, 1], through a sitting clock

    `f` is vectorized over s. With sitting=False the raw parameter is used and the
    path has no frozen samples.
    """
    if n_steps < 1:
        raise ValueError("sample_function needs at least one step")
    u = np.linspace(0.0, 1.0, n_steps + 1)
    if sitting:
        sit = default_sit(n_steps) if sit is None else sit
        s = SittingClock(n_steps, sit)(u)
    else:
        sit, s = 0, u
    samples = np.array(f(s), dtype=float)
    if samples.ndim == 1:
        samples = samples[:, None]
    if sit:
        samples[:sit + 1] = samples[0]
        samples[-sit - 1:] = samples[-1]
    return SampledPath(t0, t0 + duration, samples, sit)


def point_path(x, duration: float = 0.0, n_steps: Optional[int] = None, dt: Optional[float] = None,
               t0: float = 0.0) -> SampledPath:
    """Constant path at x; zero duration gives the single-sample identity"""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if duration == 0:
        return SampledPath(t0, t0, x[None, :], 0)
    if n_steps is None:
        n_steps = max(4, int(round(duration / dt))) if dt else 8
    sit = min(default_sit(n_steps), n_steps // 2)
    return SampledPath(t0, t0 + duration, np.repeat(x[None, :], n_steps + 1, axis=0), sit)


def resample(path: SampledPath, n_steps: int) -> SampledPath:
    """Linear interpolation onto a uniform grid of n_steps"""
    if path.n_steps == 0:
        return point_path(path.start, path.duration, n_steps, t0=path.t0)
    old = np.linspace(0.0, 1.0, path.n_steps + 1)
    new = np.linspace(0.0, 1.0, n_steps + 1)
    samples = np.column_stack([np.interp(new, old, path.samples[:, k]) for k in range(path.dim)])
    sit = min(int(np.floor(path.sit * n_steps / path.n_steps)), n_steps // 2)
    if path.sit:
        sit = max(sit, 1)
        samples[:sit + 1] = path.start
        samples[-sit - 1:] = path.end
    return SampledPath(path.t0, path.t1, samples, sit, resampled=True)


def path_compose(second: SampledPath, first: SampledPath, tol_join: float = JOIN_TOL) -> SampledPath:
    """second ∘ first: run `first`, then `second` translated to start at first.t1"""
    if first.n_steps == 0 or first.duration == 0:
        _check_join(first.end, second.start, tol_join)
        return second.translated(first.t1 - second.t0)
    if second.n_steps == 0 or second.duration == 0:
        _check_join(first.end, second.start, tol_join)
        return first
    _check_join(first.end, second.start, tol_join)
    if min(first.sit, second.sit) < 1:
        raise NotSitting("Composed paths need sitting ends")

    resampled = first.resampled or second.resampled
    if not np.isclose(first.dt, second.dt, rtol=1e-12, atol=0.0):
        # the coarser side moves onto the finer step
        dt = min(first.dt, second.dt)
        if first.dt > dt:
            n_steps = max(2 * first.sit, int(round(first.duration / dt)))
            logger.warning(f"Resampling first path from dt={first.dt:.3e} to dt={dt:.3e} ({n_steps} steps)")
            first = resample(first, n_steps)
        else:
            n_steps = max(2 * second.sit, int(round(second.duration / dt)))
            logger.warning(f"Resampling second path from dt={second.dt:.3e} to dt={dt:.3e} ({n_steps} steps)")
            second = resample(second, n_steps)
        resampled = True

    samples = np.vstack([first.samples, second.samples[1:]])
    # exact junction keeps the frozen corner frozen
    samples[first.n_steps] = first.end
    return SampledPath(first.t0, first.t1 + second.duration, samples, min(first.sit, second.sit), resampled)


def _check_join(end, start, tol_join: float):
    mismatch = float(np.linalg.norm(np.asarray(end) - np.asarray(start)))
    if mismatch > tol_join:
        raise EndpointMismatch(f"Second path starts {mismatch:.3e} away from the end of the first")


def write_csv(path: SampledPath, filename) -> None:
    """t, x_1..x_d rows for plotting"""
    header = ','.join(['t'] + [f'x{k + 1}' for k in range(path.dim)])
    np.savetxt(filename, path.to_rows(), delimiter=',', header=header, comments='')
