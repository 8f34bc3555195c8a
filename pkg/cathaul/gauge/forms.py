"""Base data of categorical gauge transformations.

A GaugeMap is a function θ̄: M → G extended equivariantly to the bundle by
θ_(x,g) = g⁻¹θ̄(x)g. A DecorationForm is an L(H)-valued base form λ extended by
Λᴴ_(x,g)(v) = α_*(g⁻¹)λ_x(v_x).
"""
import logging
from typing import Any, Dict, Optional

import numpy as np
from scipy import linalg

from cathaul.algebra.crossed_module import CrossedModule
from cathaul.bundle.connection import BundlePoint
from cathaul.bundle.fields import CoefficientField, ZeroField, field_from_descriptor
from cathaul.exceptions import FixtureError
from cathaul.lie.crossed_modules import alpha_star
from cathaul.lie.groups import MatrixLieGroup

logger = logging.getLogger(__name__)

FD_STEP = 1e-6


class GaugeMap:
    """θ̄: M → G; subclasses define value and may override the central-difference derivative"""

    family = 'gauge'

    def __init__(self, group: MatrixLieGroup, base_dim: int, equivariant: bool = True):
        self.group = group
        self.base_dim = base_dim
        self.equivariant = equivariant

    def __repr__(self):
        return f'<{type(self).__name__} {self.family} on {self.group.name}>'

    def value(self, x) -> np.ndarray:
        """θ̄(x), batched: (..., d) → (..., n, n)"""
        raise NotImplementedError

    def derivative(self, x) -> np.ndarray:
        """∂_μ θ̄(x), shape (..., d, n, n), by central differences of value"""
        x = np.asarray(x, dtype=float)
        steps = FD_STEP * np.eye(self.base_dim)
        plus = self.value(x[..., None, :] + steps)
        minus = self.value(x[..., None, :] - steps)
        return (plus - minus) / (2 * FD_STEP)

    def right_log_derivative(self, x) -> np.ndarray:
        """Coordinates of (∂_μ θ̄)θ̄⁻¹, shape (..., d, k)"""
        x = np.asarray(x, dtype=float)
        theta = self.value(x)
        return self.group.vee(self.derivative(x) @ self.group.inv(theta)[..., None, :, :])

    def theta_at(self, x, g) -> np.ndarray:
        """θ_(x,g) = g⁻¹θ̄(x)g, batched; the broken extension θ̄(x) when not equivariant"""
        value = self.value(x)
        if not self.equivariant:
            return value
        return self.group.inv(g) @ value @ g

    def theta(self, p: BundlePoint) -> np.ndarray:
        return self.theta_at(p.x, p.g)

    def broken(self) -> 'GaugeMap':
        """The same θ̄ with the non-equivariant extension θ_(x,g) = θ̄(x)"""
        return _Broken(self)

    def to_dict(self) -> Dict[str, Any]:
        """Convert gauge map to dictionary for JSON serialization"""
        return {'family': self.family, 'equivariant': self.equivariant}


class IdentityGauge(GaugeMap):
    family = 'identity'

    def value(self, x):
        x = np.asarray(x, dtype=float)
        return np.broadcast_to(self.group.identity, x.shape[:-1] + (self.group.n, self.group.n)).copy()

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        return np.zeros(x.shape[:-1] + (self.base_dim, self.group.n, self.group.n), dtype=self.group.dtype)

    def theta_at(self, x, g):
        # e is central
        return self.value(x)


class ConstantGauge(GaugeMap):
    """θ̄ ≡ exp(c)"""
    family = 'constant'

    def __init__(self, group, base_dim, coordinates, equivariant=True):
        super().__init__(group, base_dim, equivariant)
        self.coordinates = np.asarray(coordinates, dtype=float)
        self.matrix = group.exp(self.coordinates)

    def value(self, x):
        x = np.asarray(x, dtype=float)
        return np.broadcast_to(self.matrix, x.shape[:-1] + self.matrix.shape).copy()

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        return np.zeros(x.shape[:-1] + (self.base_dim,) + self.matrix.shape, dtype=self.group.dtype)

    def to_dict(self):
        return {'family': self.family, 'value': self.coordinates.tolist(), 'equivariant': self.equivariant}


class ExpLinearGauge(GaugeMap):
    """θ̄(x) = exp(X(x)) with X(x) = offset + slope·x in algebra coordinates

    The derivative is exact: d exp(X) along Ẋ is the upper-right block of
    expm([[X, Ẋ], [0, X]]).
    """
    family = 'exp_linear'

    def __init__(self, group, base_dim, offset, slope, equivariant=True):
        super().__init__(group, base_dim, equivariant)
        self.offset = np.asarray(offset, dtype=float)
        self.slope = np.asarray(slope, dtype=float)
        if self.offset.shape != (group.dim,) or self.slope.shape != (group.dim, base_dim):
            raise FixtureError(f"exp_linear gauge needs offset ({group.dim},) and slope ({group.dim}, {base_dim})")

    def coordinates(self, x) -> np.ndarray:
        return self.offset + np.asarray(x, dtype=float) @ self.slope.T

    def value(self, x):
        return self.group.exp(self.coordinates(x))

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        G, n = self.group, self.group.n
        X = G.hat(self.coordinates(x))
        directions = G.hat(self.slope.T)
        batch = x.shape[:-1]
        blocks = np.zeros(batch + (self.base_dim, 2 * n, 2 * n), dtype=complex if G.field == 'complex' else float)
        blocks[..., :n, :n] = X[..., None, :, :]
        blocks[..., n:, n:] = X[..., None, :, :]
        blocks[..., :n, n:] = directions
        return linalg.expm(blocks)[..., :n, n:]

    def to_dict(self):
        return {'family': self.family, 'offset': self.offset.tolist(), 'slope': self.slope.tolist(),
                'equivariant': self.equivariant}


class ProductGauge(GaugeMap):
    """θ̄ = θ̄₂θ̄₁"""
    family = 'product'

    def __init__(self, second: GaugeMap, first: GaugeMap):
        super().__init__(first.group, first.base_dim, first.equivariant and second.equivariant)
        self.second = second
        self.first = first

    def value(self, x):
        return self.second.value(x) @ self.first.value(x)

    def derivative(self, x):
        a, b = self.second.value(x), self.first.value(x)
        return self.second.derivative(x) @ b[..., None, :, :] + a[..., None, :, :] @ self.first.derivative(x)

    def to_dict(self):
        return {'family': self.family, 'second': self.second.to_dict(), 'first': self.first.to_dict()}


class _Broken(GaugeMap):
    def __init__(self, inner: GaugeMap):
        super().__init__(inner.group, inner.base_dim, equivariant=False)
        self.inner = inner
        self.family = inner.family

    def value(self, x):
        return self.inner.value(x)

    def derivative(self, x):
        return self.inner.derivative(x)


def gauge_from_descriptor(descriptor: Dict[str, Any], group: MatrixLieGroup, base_dim: int) -> GaugeMap:
    family = descriptor.get('family', 'identity')
    equivariant = bool(descriptor.get('equivariant', True))
    try:
        if family == 'identity':
            gauge = IdentityGauge(group, base_dim, equivariant)
        elif family == 'constant':
            gauge = ConstantGauge(group, base_dim, descriptor['value'], equivariant)
        elif family == 'exp_linear':
            gauge = ExpLinearGauge(group, base_dim, descriptor['offset'], descriptor['slope'], equivariant)
        elif family == 'product':
            gauge = ProductGauge(gauge_from_descriptor(descriptor['second'], group, base_dim),
                                 gauge_from_descriptor(descriptor['first'], group, base_dim))
        else:
            raise FixtureError(f"Unknown gauge family {family!r}")
    except KeyError as e:
        raise FixtureError(f"Gauge descriptor {family!r} is missing {str(e)}")
    return gauge


class DecorationForm:
    """Λᴴ from base coefficients λ: M → L(H)ᵈ"""

    def __init__(self, cm: CrossedModule, coefficients: CoefficientField, name: str = 'Lambda'):
        if coefficients.algebra_dim != cm.H.dim:
            raise ValueError(f"Decoration coefficients need algebra dimension {cm.H.dim}")
        self.cm = cm
        self.coefficients = coefficients
        self.name = name

    def __repr__(self):
        return f'<DecorationForm {self.name} in L({self.cm.H.name})>'

    @classmethod
    def zero(cls, cm: CrossedModule, base_dim: int) -> 'DecorationForm':
        return cls(cm, ZeroField(base_dim, cm.H.dim), name='zero')

    @property
    def base_dim(self) -> int:
        return self.coefficients.base_dim

    def base_value(self, x, v) -> np.ndarray:
        """λ_x(v), batched"""
        return np.einsum('...m,...mk->...k', np.asarray(v, dtype=float), self.coefficients(x))

    def evaluate(self, p: BundlePoint, v_x, v_g=None) -> np.ndarray:
        """Λᴴ_p(v) = α_*(g⁻¹)λ_x(v_x); vanishes on verticals"""
        return alpha_star(self.cm, self.cm.G.inv(p.g), self.base_value(p.x, v_x))


def decoration_from_descriptor(descriptor: Optional[Dict[str, Any]], cm: CrossedModule,
                               base_dim: int) -> DecorationForm:
    if not descriptor:
        return DecorationForm.zero(cm, base_dim)
    return DecorationForm(cm, field_from_descriptor(descriptor, base_dim, cm.H.dim),
                          name=descriptor.get('family', 'Lambda'))
