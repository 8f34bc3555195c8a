"""Categorical gauge transformations Θ of the decorated bundle P^{A,dec}.

Θ is built from an equivariant θ and a decoration form Λᴴ. On objects
Θ(p) = pθ_p. On a decorated morphism (γ̃; h) with p = γ̃₀,

    Θ(γ̃; h) = (γ̃; e)·(h_ōγ, θ_p) = (γ̃θ_p; α_{θ_p⁻¹}(h_γ̃)h),    h_ōγ = h_γ̃α_{θ_p}(h),

where h_γ̃ is the endpoint of the decoration ODE h′h⁻¹ = -Λᴴ(γ̃′), h(0) = e.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from cathaul.algebra.catgroup import CatGroupMorphism
from cathaul.algebra.crossed_module import CrossedModule
from cathaul.bundle.connection import BundlePath, BundlePoint, ConnectionForm, TrivialBundle
from cathaul.bundle.fields import DerivedField
from cathaul.bundle.integrators import integrate
from cathaul.bundle.transport import horizontal_lift
from cathaul.catbundle.connections import CatConnection
from cathaul.catbundle.morphisms import DecMorphism, dec_act
from cathaul.catbundle.spaces import DecoratedBundle
from cathaul.gauge.forms import DecorationForm, GaugeMap, IdentityGauge, ProductGauge
from cathaul.lie.crossed_modules import alpha_star, tau_star
from cathaul.paths.sampled_path import GroupPath

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CatGaugeTransform:
    """Θ determined by (θ, Λᴴ) on P^{A,dec} for the crossed module cm

    `functorial` marks data known to preserve targets, e.g. a decoration from
    compatible_decoration; composition is then a hard check.
    """
    cm: CrossedModule
    theta: GaugeMap
    decoration: DecorationForm
    name: str = 'Theta'
    functorial: bool = False

    def __post_init__(self):
        if self.decoration.cm is not self.cm and self.decoration.cm.name != self.cm.name:
            raise ValueError(f"Decoration of {self.name} belongs to another crossed module")
        if self.theta.base_dim != self.decoration.base_dim:
            raise ValueError(f"θ̄ and λ of {self.name} live on bases of different dimension")

    def __repr__(self):
        return f'<CatGaugeTransform {self.name} theta={self.theta.family} lambda={self.decoration.name}>'

    @classmethod
    def identity(cls, cm: CrossedModule, base_dim: int) -> 'CatGaugeTransform':
        return cls(cm, IdentityGauge(cm.G, base_dim), DecorationForm.zero(cm, base_dim), name='identity',
                   functorial=True)

    @property
    def base_dim(self) -> int:
        return self.theta.base_dim

    def to_dict(self) -> Dict[str, Any]:
        """Convert gauge transformation to dictionary for JSON serialization"""
        return {
            'name': self.name,
            'crossed_module': self.cm.name,
            'theta': self.theta.to_dict(),
            'lambda': self.decoration.coefficients.to_dict(),
            'functorial': self.functorial
        }


def decoration_ode(decoration: DecorationForm, lift: BundlePath, order: int = 2,
                   bundle: Optional[TrivialBundle] = None) -> GroupPath:
    """h(·) in H with h′h⁻¹ = -Λᴴ(γ̃′) and h(t0) = e, along a horizontal lift γ̃

    Horizontality of the lift is the caller's responsibility.
    """
    cm = decoration.cm
    if bundle is not None:
        bundle.check_domain(lift.base.samples)

    def generator(x, v, g):
        return alpha_star(cm, cm.G.inv(g), decoration.base_value(x, v))

    values = integrate(cm.H, generator, lift.base, cm.H.identity, fiber=lift.fiber, order=order,
                       fiber_group=cm.G)
    return GroupPath(lift.base.t0, lift.base.t1, values, cm.H)


def gauge_apply_object(transform: CatGaugeTransform, p: BundlePoint) -> BundlePoint:
    """Θ(p) = pθ_p"""
    return p.act(transform.theta.theta(p))


def decoration_label(transform: CatGaugeTransform, m: DecMorphism, order: int = 2, h_lift=None):
    """h_ōγ = h_γ̃·α_{θ_p}(h) with p the source of γ̃"""
    cm = transform.cm
    if h_lift is None:
        h_lift = decoration_ode(transform.decoration, m.lift, order).end
    theta_p = transform.theta.theta(m.lift.start)
    return cm.H.mul(h_lift, cm.alpha(theta_p, m.h))


def gauge_apply_morphism(transform: CatGaugeTransform, m: DecMorphism, order: int = 2,
                         h_lift=None) -> DecMorphism:
    """Θ(γ̃; h) = (γ̃; e)·(h_ōγ, θ_p); base samples are untouched"""
    cm = transform.cm
    theta_p = transform.theta.theta(m.lift.start)
    label = decoration_label(transform, m, order, h_lift)
    return dec_act(cm, DecMorphism(m.lift, cm.H.identity), CatGroupMorphism(label, theta_p))


def transformed_connection(A: ConnectionForm, transform: CatGaugeTransform, literal: bool = False,
                           name: Optional[str] = None) -> ConnectionForm:
    """A′ with base coefficients Ad(θ̄)(a + τ_*λ) - (dθ̄)θ̄⁻¹

    The candidate path γ̃θ_γ̃τ(h_γ̃)θ_p⁻¹ is horizontal for exactly this form.
    `literal=True` gives the additive reading Ad(θ̄)a - (dθ̄)θ̄⁻¹ + τ_*λ; the two
    agree when θ̄ commutes with τ_*λ.
    """
    cm, G = transform.cm, A.group
    a, theta, lam = A.coefficients, transform.theta, transform.decoration.coefficients

    def coefficients(x):
        bar = theta.value(x)[..., None, :, :]
        shift = tau_star(cm, lam(x))
        rotated = G.Ad(bar, a(x)) if literal else G.Ad(bar, a(x) + shift)
        value = rotated - theta.right_log_derivative(x)
        return value + shift if literal else value

    field = DerivedField(coefficients, a.base_dim, a.algebra_dim, f'{transform.name}-transform of {A.name}')
    return ConnectionForm(A.bundle, field, name or f'{A.name}^{transform.name}')


def compose_gauge(second: CatGaugeTransform, first: CatGaugeTransform,
                  name: Optional[str] = None) -> CatGaugeTransform:
    """Data of Θ₂∘Θ₁: θ̄ = θ̄₂θ̄₁, λ = λ₁ + α_*(θ̄₁⁻¹)λ₂"""
    if first.cm is not second.cm and first.cm.name != second.cm.name:
        raise ValueError("Gauge transformations over different crossed modules do not compose")
    cm = first.cm
    lam1, lam2 = first.decoration.coefficients, second.decoration.coefficients

    def coefficients(x):
        inverse = cm.G.inv(first.theta.value(x))[..., None, :, :]
        return lam1(x) + alpha_star(cm, inverse, lam2(x))

    field = DerivedField(coefficients, lam1.base_dim, lam1.algebra_dim,
                         f'{second.decoration.name} after {first.decoration.name}')
    decoration = DecorationForm(cm, field, name=f'{second.decoration.name}*{first.decoration.name}')
    return CatGaugeTransform(cm, ProductGauge(second.theta, first.theta), decoration,
                             name=name or f'{second.name}.{first.name}')


def tau_star_matrix(cm: CrossedModule) -> np.ndarray:
    """τ_* as a (dim G, dim H) matrix in algebra coordinates"""
    return np.atleast_2d(tau_star(cm, np.eye(cm.H.dim))).T


def compatible_decoration(A: ConnectionForm, theta: GaugeMap, cm: CrossedModule,
                          name: str = 'compatible') -> DecorationForm:
    """λ with τ_*λ = Ad(θ̄)a - a - (dθ̄)θ̄⁻¹

    Along every A-horizontal lift this gives τ(h_γ̃)θ_p = θ_q, so the resulting
    Θ preserves targets. Needs τ_* invertible.
    """
    T = tau_star_matrix(cm)
    if T.shape[0] != T.shape[1] or np.linalg.matrix_rank(T) < T.shape[0]:
        raise ValueError(f"τ_* of {cm.name} is not invertible; no compatible decoration exists")
    T_inv = np.linalg.inv(T)
    a, G = A.coefficients, A.group

    def coefficients(x):
        bar = theta.value(x)[..., None, :, :]
        target = G.Ad(bar, a(x)) - a(x) - theta.right_log_derivative(x)
        return target @ T_inv.T

    field = DerivedField(coefficients, a.base_dim, cm.H.dim, f'decoration compatible with {A.name}')
    return DecorationForm(cm, field, name=name)


def functorial_gauge(A: ConnectionForm, theta: GaugeMap, cm: CrossedModule,
                     name: str = 'Theta') -> CatGaugeTransform:
    """Θ from θ̄ and its compatible decoration"""
    return CatGaugeTransform(cm, theta, compatible_decoration(A, theta, cm), name=name, functorial=True)


def conn_decorated(A: ConnectionForm, decoration: DecorationForm, order: int = 2) -> CatConnection:
    """τ(γ; p) = (γ̃_p; h_γ̃) with h_γ̃ from the decoration ODE"""
    cm = decoration.cm
    space = DecoratedBundle(cm, A)

    def lift(gamma, p):
        path = horizontal_lift(A, gamma, p, order)
        return DecMorphism(path, decoration_ode(decoration, path, order).end)

    return CatConnection(space, lift, 'custom-dec', name=f'decorated({A.name},{decoration.name})')
