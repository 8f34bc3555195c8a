"""Algebra-valued coefficient fields on a box in ℝᵈ.

A field evaluates to an array of shape (..., d, k): row μ holds the algebra
coordinates of the coefficient a_μ(x). `jacobian` returns (..., d, k, d) with
the last axis the direction of differentiation.
"""
import logging
from typing import Any, Callable, Dict, Sequence

import numpy as np

from cathaul.exceptions import FixtureError

logger = logging.getLogger(__name__)

FD_STEP = 1e-6


class CoefficientField:
    """Base class; subclasses provide __call__ and, where analytic, jacobian"""

    family = 'field'

    def __init__(self, base_dim: int, algebra_dim: int):
        self.base_dim = base_dim
        self.algebra_dim = algebra_dim

    def __repr__(self):
        return f'<{type(self).__name__} {self.family} d={self.base_dim} k={self.algebra_dim}>'

    def __call__(self, x) -> np.ndarray:
        raise NotImplementedError

    def jacobian(self, x) -> np.ndarray:
        """Central finite differences, step FD_STEP"""
        x = np.asarray(x, dtype=float)
        columns = []
        for nu in range(self.base_dim):
            step = np.zeros(self.base_dim)
            step[nu] = FD_STEP
            columns.append((self(x + step) - self(x - step)) / (2 * FD_STEP))
        return np.stack(columns, axis=-1)

    def __add__(self, other: 'CoefficientField') -> 'CoefficientField':
        return SumField([self, other])

    def to_dict(self) -> Dict[str, Any]:
        """Convert field to dictionary for JSON serialization"""
        return {'family': self.family}


class ZeroField(CoefficientField):
    family = 'zero'

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.zeros(x.shape[:-1] + (self.base_dim, self.algebra_dim))

    def jacobian(self, x):
        x = np.asarray(x, dtype=float)
        return np.zeros(x.shape[:-1] + (self.base_dim, self.algebra_dim, self.base_dim))


class ConstantField(CoefficientField):
    family = 'constant'

    def __init__(self, value):
        value = np.asarray(value, dtype=float)
        super().__init__(*value.shape)
        self.value = value

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.broadcast_to(self.value, x.shape[:-1] + self.value.shape).copy()

    def jacobian(self, x):
        x = np.asarray(x, dtype=float)
        return np.zeros(x.shape[:-1] + self.value.shape + (self.base_dim,))

    def to_dict(self):
        return {'family': self.family, 'value': self.value.tolist()}


class LinearField(CoefficientField):
    """a_μ^j(x) = offset[μ, j] + slope[μ, j, ν] x_ν"""
    family = 'linear'

    def __init__(self, offset, slope):
        offset = np.asarray(offset, dtype=float)
        slope = np.asarray(slope, dtype=float)
        if slope.shape != offset.shape + (offset.shape[0],):
            raise FixtureError(f"Linear field slope must have shape {offset.shape + (offset.shape[0],)}")
        super().__init__(*offset.shape)
        self.offset = offset
        self.slope = slope

    def __call__(self, x):
        return self.offset + np.einsum('mjn,...n->...mj', self.slope, np.asarray(x, dtype=float))

    def jacobian(self, x):
        x = np.asarray(x, dtype=float)
        return np.broadcast_to(self.slope, x.shape[:-1] + self.slope.shape).copy()

    def to_dict(self):
        return {'family': self.family, 'offset': self.offset.tolist(), 'slope': self.slope.tolist()}


class TrigonometricField(CoefficientField):
    """a_μ^j(x) = amplitude[μ, j] sin(frequency[μ, j, ·]·x + phase[μ, j])"""
    family = 'trigonometric'

    def __init__(self, amplitude, frequency, phase=None):
        amplitude = np.asarray(amplitude, dtype=float)
        frequency = np.asarray(frequency, dtype=float)
        phase = np.zeros_like(amplitude) if phase is None else np.asarray(phase, dtype=float)
        if frequency.shape != amplitude.shape + (amplitude.shape[0],) or phase.shape != amplitude.shape:
            raise FixtureError("Trigonometric field arrays have inconsistent shapes")
        super().__init__(*amplitude.shape)
        self.amplitude = amplitude
        self.frequency = frequency
        self.phase = phase

    def _argument(self, x):
        return np.einsum('mjn,...n->...mj', self.frequency, np.asarray(x, dtype=float)) + self.phase

    def __call__(self, x):
        return self.amplitude * np.sin(self._argument(x))

    def jacobian(self, x):
        return (self.amplitude * np.cos(self._argument(x)))[..., None] * self.frequency

    def to_dict(self):
        return {'family': self.family, 'amplitude': self.amplitude.tolist(),
                'frequency': self.frequency.tolist(), 'phase': self.phase.tolist()}


class SumField(CoefficientField):
    family = 'sum'

    def __init__(self, terms: Sequence[CoefficientField]):
        terms = list(terms)
        if not terms:
            raise FixtureError("A sum field needs at least one term")
        shapes = {(t.base_dim, t.algebra_dim) for t in terms}
        if len(shapes) != 1:
            raise FixtureError(f"Sum field terms disagree in shape: {sorted(shapes)}")
        super().__init__(terms[0].base_dim, terms[0].algebra_dim)
        self.terms = terms

    def __call__(self, x):
        return sum(term(x) for term in self.terms)

    def jacobian(self, x):
        return sum(term.jacobian(x) for term in self.terms)

    def to_dict(self):
        return {'family': self.family, 'terms': [term.to_dict() for term in self.terms]}


class DerivedField(CoefficientField):
    """Field computed by a callable; jacobian by finite differences"""
    family = 'derived'

    def __init__(self, func: Callable[[np.ndarray], np.ndarray], base_dim: int, algebra_dim: int,
                 description: str = 'derived'):
        super().__init__(base_dim, algebra_dim)
        self.func = func
        self.description = description

    def __call__(self, x):
        return self.func(np.asarray(x, dtype=float))

    def to_dict(self):
        return {'family': self.family, 'description': self.description}


def field_from_descriptor(descriptor: Dict[str, Any], base_dim: int, algebra_dim: int) -> CoefficientField:
    """Field from {"family": ..., params}; shapes are checked against (d, k)"""
    family = descriptor.get('family')
    try:
        if family == 'zero':
            field = ZeroField(base_dim, algebra_dim)
        elif family == 'constant':
            field = ConstantField(descriptor['value'])
        elif family == 'linear':
            field = LinearField(descriptor['offset'], descriptor['slope'])
        elif family == 'trigonometric':
            field = TrigonometricField(descriptor['amplitude'], descriptor['frequency'], descriptor.get('phase'))
        elif family == 'sum':
            field = SumField([field_from_descriptor(term, base_dim, algebra_dim) for term in descriptor['terms']])
        else:
            raise FixtureError(f"Unknown coefficient family {family!r}")
    except KeyError as e:
        raise FixtureError(f"Coefficient descriptor {family!r} is missing {str(e)}")
    if (field.base_dim, field.algebra_dim) != (base_dim, algebra_dim):
        raise FixtureError(f"Coefficient field has shape ({field.base_dim}, {field.algebra_dim}), "
                           f"expected ({base_dim}, {algebra_dim})")
    return field
