"""Trivial bundles M × G over a box, their points and paths, and connection forms.

Tangent vectors at (x, g) are pairs (v_x, ξ) with ξ the right-translated fiber
velocity δg·g⁻¹. A connection with base coefficients a evaluates to
Ad(g⁻¹)(a_x(v_x) + ξ); its horizontal lifts solve g′ = -a(γ′)g.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from cathaul.bundle.fields import CoefficientField, DerivedField, SumField
from cathaul.exceptions import FiberMismatch, NotComposable, OutOfDomain
from cathaul.lie.groups import MatrixLieGroup
from cathaul.paths.sampled_path import JOIN_TOL, SampledPath, path_compose, point_path, resample

logger = logging.getLogger(__name__)

DOMAIN_TOL = 1e-12


class TrivialBundle:
    """M × G with M the open box (lower, upper) ⊂ ℝᵈ"""

    def __init__(self, group: MatrixLieGroup, lower, upper, name: str = 'bundle'):
        self.group = group
        self.lower = np.asarray(lower, dtype=float)
        self.upper = np.asarray(upper, dtype=float)
        if self.lower.shape != self.upper.shape or np.any(self.lower >= self.upper):
            raise ValueError("Base box needs lower < upper in every coordinate")
        self.base_dim = self.lower.shape[0]
        self.name = name

    def __repr__(self):
        return f'<TrivialBundle {self.name}: R{self.base_dim} x {self.group.name}>'

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower - DOMAIN_TOL) and np.all(x <= self.upper + DOMAIN_TOL))

    def check_domain(self, x):
        if not self.contains(x):
            raise OutOfDomain(f"Base point(s) leave the box [{self.lower}, {self.upper}] of {self.name}")

    def point(self, x, g=None) -> 'BundlePoint':
        return BundlePoint(np.asarray(x, dtype=float), self.group.identity if g is None else np.asarray(g))

    def with_group(self, group: MatrixLieGroup, name: Optional[str] = None) -> 'TrivialBundle':
        return TrivialBundle(group, self.lower, self.upper, name or f'{self.name}-{group.name}')

    def sample_points(self, rng: np.random.Generator, count: int, margin: float = 0.1):
        """Random points with base coordinates inside the shrunken box"""
        span = self.upper - self.lower
        xs = rng.uniform(self.lower + margin * span, self.upper - margin * span, size=(count, self.base_dim))
        return [BundlePoint(x, g) for x, g in zip(xs, self.group.sample(rng, count))]


@dataclass(frozen=True, eq=False)
class BundlePoint:
    x: np.ndarray
    g: np.ndarray

    def __repr__(self):
        return f'<BundlePoint x={np.round(self.x, 4).tolist()}>'

    def act(self, a) -> 'BundlePoint':
        return BundlePoint(self.x, self.g @ a)

    def distance(self, other: 'BundlePoint') -> float:
        return max(float(np.linalg.norm(self.x - other.x)), float(np.linalg.norm(self.g - other.g)))


@dataclass(frozen=True, eq=False)
class BundlePath:
    """A path in M × G: base samples plus a stack of fiber matrices on the same grid"""
    base: SampledPath
    fiber: np.ndarray
    group: MatrixLieGroup = field(repr=False)

    def __post_init__(self):
        fiber = np.array(self.fiber)
        if fiber.shape[0] != self.base.n_steps + 1:
            raise ValueError(f"Fiber has {fiber.shape[0]} samples for a base of {self.base.n_steps + 1}")
        fiber.setflags(write=False)
        object.__setattr__(self, 'fiber', fiber)

    def __repr__(self):
        return f'<BundlePath N={self.base.n_steps} over {self.base!r}>'

    @classmethod
    def constant(cls, p: BundlePoint, group: MatrixLieGroup, duration: float = 0.0,
                 n_steps: Optional[int] = None) -> 'BundlePath':
        """Identity morphism 1_p (zero duration) or a constant path"""
        base = point_path(p.x, duration, n_steps)
        return cls(base, np.repeat(np.asarray(p.g)[None], base.n_steps + 1, axis=0), group)

    @property
    def n_steps(self) -> int:
        return self.base.n_steps

    @property
    def start(self) -> BundlePoint:
        return BundlePoint(self.base.start, self.fiber[0])

    @property
    def end(self) -> BundlePoint:
        return BundlePoint(self.base.end, self.fiber[-1])

    def point(self, i: int) -> BundlePoint:
        return BundlePoint(self.base.samples[i], self.fiber[i])

    def act(self, a) -> 'BundlePath':
        """Sample-wise right translation by a"""
        return BundlePath(self.base, self.fiber @ a, self.group)

    def left_act(self, values) -> 'BundlePath':
        """Sample-wise fiber g(t) ↦ g(t)·values(t)"""
        return BundlePath(self.base, self.fiber @ values, self.group)

    def resampled(self, n_steps: int) -> 'BundlePath':
        """Fiber interpolated in the algebra relative to each left sample, then projected"""
        if n_steps == self.n_steps:
            return self
        base = resample(self.base, n_steps)
        if self.n_steps == 0:
            return BundlePath(base, np.repeat(self.fiber[:1], n_steps + 1, axis=0), self.group)
        u = np.linspace(0.0, self.n_steps, n_steps + 1)
        left = np.minimum(np.floor(u).astype(int), self.n_steps - 1)
        frac = u - left
        G = self.group
        g0, g1 = self.fiber[left], self.fiber[left + 1]
        step = G.log(G.inv(g0) @ g1)
        fiber = G.project(g0 @ G.exp(frac[:, None] * step))
        return BundlePath(base, fiber, G)

    def compose(self, first: 'BundlePath', tol_join: float = JOIN_TOL) -> 'BundlePath':
        """self ∘ first; the coarser grid is resampled onto the finer step size"""
        second = self
        mismatch = first.end.distance(second.start)
        if mismatch > tol_join:
            raise NotComposable(f"Bundle paths do not meet: mismatch {mismatch:.3e}")
        if first.n_steps == 0 or first.base.duration == 0:
            return BundlePath(second.base.translated(first.base.t1 - second.base.t0), second.fiber, self.group)
        if second.n_steps == 0 or second.base.duration == 0:
            return first
        if not np.isclose(first.base.dt, second.base.dt, rtol=1e-12, atol=0.0):
            dt = min(first.base.dt, second.base.dt)
            logger.warning(f"Composing bundle paths on different grids; resampling to dt={dt:.3e}")
            first = first.resampled(max(2 * first.base.sit, int(round(first.base.duration / dt))))
            second = second.resampled(max(2 * second.base.sit, int(round(second.base.duration / dt))))
        base = path_compose(second.base, first.base, tol_join)
        fiber = np.concatenate([first.fiber, second.fiber[1:]])
        return BundlePath(base, fiber, self.group)

    def distance(self, other: 'BundlePath') -> float:
        """Sample-wise on equal grids; against every sample when one side is a single point;
        endpoints otherwise"""
        if self.n_steps == other.n_steps:
            return max(float(np.abs(self.base.samples - other.base.samples).max()),
                       float(np.linalg.norm(self.fiber - other.fiber, axis=(-2, -1)).max()))
        if self.n_steps == 0 or other.n_steps == 0:
            single, full = (self, other) if self.n_steps == 0 else (other, self)
            return max(float(np.abs(full.base.samples - single.base.samples[0]).max()),
                       float(np.linalg.norm(full.fiber - single.fiber[0], axis=(-2, -1)).max()))
        return max(self.start.distance(other.start), self.end.distance(other.end))

    def to_rows(self) -> np.ndarray:
        """t, base coordinates, real and imaginary parts of the flattened fiber"""
        flat = self.fiber.reshape(self.n_steps + 1, -1)
        columns = [self.base.times[:, None], self.base.samples, flat.real]
        if np.iscomplexobj(flat):
            columns.append(flat.imag)
        return np.hstack(columns)

    def write_csv(self, filename) -> None:
        n = self.fiber.shape[-1]
        entries = [f'g{i + 1}{j + 1}' for i in range(n) for j in range(n)]
        header = ['t'] + [f'x{k + 1}' for k in range(self.base.dim)] + [f're_{e}' for e in entries]
        if np.iscomplexobj(self.fiber):
            header += [f'im_{e}' for e in entries]
        np.savetxt(filename, self.to_rows(), delimiter=',', header=','.join(header), comments='')


class ConnectionForm:
    """Connection on a trivial bundle given by base coefficients a: M → L(G)ᵈ"""

    def __init__(self, bundle: TrivialBundle, coefficients: CoefficientField, name: str = 'A'):
        if coefficients.base_dim != bundle.base_dim or coefficients.algebra_dim != bundle.group.dim:
            raise ValueError(f"Coefficients of shape ({coefficients.base_dim}, {coefficients.algebra_dim}) "
                             f"do not fit {bundle!r}")
        self.bundle = bundle
        self.coefficients = coefficients
        self.name = name

    def __repr__(self):
        return f'<ConnectionForm {self.name} on {self.bundle!r}>'

    @property
    def group(self) -> MatrixLieGroup:
        return self.bundle.group

    def base_value(self, x, v) -> np.ndarray:
        """a_x(v) = Σ_μ v^μ a_μ(x), batched over leading axes"""
        return np.einsum('...m,...mk->...k', np.asarray(v, dtype=float), self.coefficients(x))

    def curvature(self, x) -> np.ndarray:
        """F_μν = ∂_μ a_ν - ∂_ν a_μ + [a_μ, a_ν], shape (d, d, k)"""
        a = self.coefficients(x)
        jac = self.coefficients.jacobian(x)
        d = self.bundle.base_dim
        F = np.zeros((d, d, self.group.dim))
        for mu in range(d):
            for nu in range(d):
                F[mu, nu] = jac[nu, :, mu] - jac[mu, :, nu] + self.group.bracket(a[mu], a[nu])
        return F

    def shifted(self, shift: 'ShiftForm') -> 'ConnectionForm':
        """A + C"""
        return ConnectionForm(self.bundle, SumField([self.coefficients, shift.coefficients]),
                              name=f'{self.name}+{shift.name}')

    def pushed_forward(self, target_group: MatrixLieGroup, hom_star: Callable[[np.ndarray], np.ndarray],
                       name: Optional[str] = None) -> 'ConnectionForm':
        """Base coefficients s_*a for a homomorphism s: G → K with differential hom_star"""
        a = self.coefficients
        field = DerivedField(lambda x: hom_star(a(x)), a.base_dim, target_group.dim, f'pushforward of {self.name}')
        return ConnectionForm(self.bundle.with_group(target_group), field, name or f's*{self.name}')


class ShiftForm:
    """Ad-equivariant horizontal 1-form C_(x,g)(v) = Ad(g⁻¹)c_x(v_x)"""

    def __init__(self, bundle: TrivialBundle, coefficients: CoefficientField, name: str = 'C'):
        if coefficients.base_dim != bundle.base_dim or coefficients.algebra_dim != bundle.group.dim:
            raise ValueError(f"Shift coefficients do not fit {bundle!r}")
        self.bundle = bundle
        self.coefficients = coefficients
        self.name = name

    def __repr__(self):
        return f'<ShiftForm {self.name}>'

    def base_value(self, x, v) -> np.ndarray:
        return np.einsum('...m,...mk->...k', np.asarray(v, dtype=float), self.coefficients(x))

    def evaluate(self, p: BundlePoint, v_x, v_g=None) -> np.ndarray:
        """The fiber velocity v_g is accepted and ignored: C vanishes on verticals"""
        G = self.bundle.group
        return G.Ad(G.inv(p.g), self.base_value(p.x, v_x))


def connection_eval(A: ConnectionForm, p: BundlePoint, v_x, v_g=None) -> np.ndarray:
    """A_p(v) = Ad(g⁻¹)(a_x(v_x) + v_g), v_g the right-translated fiber velocity"""
    A.bundle.check_domain(p.x)
    G = A.group
    value = A.base_value(p.x, v_x)
    if v_g is not None:
        value = value + np.asarray(v_g, dtype=float)
    return G.Ad(G.inv(p.g), value)


def vertical_vector(p: BundlePoint, xi, group: MatrixLieGroup):
    """Fundamental vector of ξ at p, as (v_x, v_g): d/dt p·exp(tξ) has v_g = Ad(g)ξ"""
    return np.zeros_like(p.x), group.Ad(p.g, xi)


def check_base_point(p: BundlePoint, x, tol: float = JOIN_TOL):
    mismatch = float(np.linalg.norm(np.asarray(p.x) - np.asarray(x)))
    if mismatch > tol:
        raise FiberMismatch(f"Bundle point lies {mismatch:.3e} away from the path start")
