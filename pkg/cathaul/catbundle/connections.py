import logging
from dataclasses import dataclass
from typing import Any, Callable

from cathaul.algebra.crossed_module import CrossedModule
from cathaul.bundle.connection import BundlePoint, ConnectionForm
from cathaul.bundle.transport import horizontal_lift, parallel_transport
from cathaul.catbundle.morphisms import DecMorphism, PPMorphism, functor_Sdec
from cathaul.catbundle.spaces import CategoricalBundle, DecoratedBundle, PairBundle
from cathaul.paths.sampled_path import SampledPath

logger = logging.getLogger(__name__)

FLAVORS = ('standard-PP', 'lifted-dec', 'pushforward-dec', 'pushforward-general', 'custom-dec')


@dataclass(frozen=True, eq=False)
class CatConnection:
    """Horizontal-lift assignment (γ, p) ↦ τ(γ; p) on a categorical bundle"""
    space: CategoricalBundle
    lift_fn: Callable[[SampledPath, BundlePoint], Any]
    flavor: str
    name: str = 'connection'

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"Unknown connection flavor {self.flavor!r}")

    def __repr__(self):
        return f'<CatConnection {self.name} ({self.flavor}) on {self.space!r}>'

    def lift(self, gamma: SampledPath, p: BundlePoint):
        return self.lift_fn(gamma, p)


def conn_standard(A: ConnectionForm, order: int = 2) -> CatConnection:
    """τ(γ; p) = (q, p; γ) with q the A-parallel transport of p"""
    space = PairBundle(A.bundle)

    def lift(gamma, p):
        return PPMorphism(parallel_transport(A, gamma, p, order), p, gamma)

    return CatConnection(space, lift, 'standard-PP', name=f'standard({A.name})')


def conn_lift_dec(A: ConnectionForm, cm: CrossedModule, order: int = 2) -> CatConnection:
    """τ(γ; p) = (γ̃_p; e)"""
    space = DecoratedBundle(cm, A)

    def lift(gamma, p):
        return DecMorphism(horizontal_lift(A, gamma, p, order), cm.H.identity)

    return CatConnection(space, lift, 'lifted-dec', name=f'lift_dec({A.name})')


def conn_pushforward_dec(A1: CatConnection) -> CatConnection:
    """τ(γ; p) = (qτ(h), p; γ) where τ_A1(γ; p) = (γ̃; h) and q = γ̃₁"""
    if not isinstance(A1.space, DecoratedBundle):
        raise TypeError(f"{A1!r} does not live on a decorated bundle")
    cm = A1.space.cm
    space = PairBundle(A1.space.bundle)

    def lift(gamma, p):
        return functor_Sdec(cm, A1.lift(gamma, p))

    return CatConnection(space, lift, 'pushforward-dec', name=f'pushforward({A1.name})')
