"""Morphisms of the pair bundle P•• and of the decorated bundle P^{A,dec}.

P•• morphisms are triples (p1, p0; γ) with γ a base path from π(p0) to π(p1);
Mor(G••) acts by (p1, p0; γ)(g1 ⟵ g0) = (p1g1, p0g0; γ).

Decorated morphisms are pairs (γ̃; h) of an A-horizontal bundle path and an
element of H, with source γ̃₀ and target γ̃₁τ(h). Mor(𝐆) acts by

    (γ̃; h)·(h′, g′) = (γ̃g′; α_{g′⁻¹}(hh′)).
"""
import logging
from dataclasses import dataclass
from typing import Any

import numpy as np

from cathaul.algebra.catgroup import CatGroupMorphism, GddMorphism
from cathaul.algebra.crossed_module import CrossedModule
from cathaul.bundle.connection import BundlePath, BundlePoint, check_base_point
from cathaul.exceptions import NotComposable
from cathaul.paths.sampled_path import JOIN_TOL, SampledPath, path_compose, point_path

logger = logging.getLogger(__name__)


def path_distance(a: SampledPath, b: SampledPath) -> float:
    """Sample-wise on equal grids, against the single sample of a point, endpoints otherwise"""
    if a.n_steps == b.n_steps:
        return float(np.abs(a.samples - b.samples).max())
    if a.n_steps == 0 or b.n_steps == 0:
        single, full = (a, b) if a.n_steps == 0 else (b, a)
        return float(np.abs(full.samples - single.samples[0]).max())
    return float(max(np.abs(a.start - b.start).max(), np.abs(a.end - b.end).max()))


@dataclass(frozen=True, eq=False)
class PPMorphism:
    """(p1, p0; γ) ∈ P × P × Mor(ℙ₁(M))"""
    p1: BundlePoint
    p0: BundlePoint
    gamma: SampledPath

    def __post_init__(self):
        check_base_point(self.p0, self.gamma.start)
        check_base_point(self.p1, self.gamma.end)

    def __repr__(self):
        return f'<PPMorphism over {self.gamma!r}>'


def pp_source(m: PPMorphism) -> BundlePoint:
    return m.p0


def pp_target(m: PPMorphism) -> BundlePoint:
    return m.p1


def pp_identity(p: BundlePoint, gamma: SampledPath = None) -> PPMorphism:
    return PPMorphism(p, p, gamma if gamma is not None else point_path(p.x))


def pp_compose(m2: PPMorphism, m1: PPMorphism, tol_join: float = JOIN_TOL) -> PPMorphism:
    """(p2, p1; δ)∘(p1, p0; γ) = (p2, p0; δ∘γ)"""
    mismatch = m2.p0.distance(m1.p1)
    if mismatch > tol_join:
        raise NotComposable(f"P•• morphisms do not chain: mismatch {mismatch:.3e}")
    return PPMorphism(m2.p1, m1.p0, path_compose(m2.gamma, m1.gamma, tol_join))


def pp_act(m: PPMorphism, phi: GddMorphism) -> PPMorphism:
    return PPMorphism(m.p1.act(phi.g1), m.p0.act(phi.g0), m.gamma)


def pp_distance(a: PPMorphism, b: PPMorphism) -> float:
    return max(a.p1.distance(b.p1), a.p0.distance(b.p0), path_distance(a.gamma, b.gamma))


@dataclass(frozen=True, eq=False)
class DecMorphism:
    """(γ̃; h): A-horizontal bundle path with decoration h ∈ H"""
    lift: BundlePath
    h: Any

    def __repr__(self):
        return f'<DecMorphism over {self.lift.base!r}>'


def dec_source(cm: CrossedModule, m: DecMorphism) -> BundlePoint:
    return m.lift.start


def dec_target(cm: CrossedModule, m: DecMorphism) -> BundlePoint:
    return m.lift.end.act(cm.tau(m.h))


def dec_identity(cm: CrossedModule, p: BundlePoint, gamma: SampledPath = None) -> DecMorphism:
    """(1_p; e), carried on the point path γ when one is given"""
    if gamma is None:
        lift = BundlePath.constant(p, cm.G)
    else:
        lift = BundlePath(gamma, np.repeat(np.asarray(p.g)[None], gamma.n_steps + 1, axis=0), cm.G)
    return DecMorphism(lift, cm.H.identity)


def dec_act(cm: CrossedModule, m: DecMorphism, phi: CatGroupMorphism) -> DecMorphism:
    """(γ̃; h)·(h′, g′) = (γ̃g′; α_{g′⁻¹}(hh′))"""
    g_inv = cm.G.inv(phi.g)
    return DecMorphism(m.lift.act(phi.g), cm.alpha(g_inv, cm.H.mul(m.h, phi.h)))


def dec_compose(cm: CrossedModule, m2: DecMorphism, m1: DecMorphism, tol_join: float = JOIN_TOL) -> DecMorphism:
    """(δ̃; h2)∘(γ̃; h1) = (δ̃τ(h1)⁻¹ ∘ γ̃; h1h2)"""
    target = dec_target(cm, m1)
    mismatch = m2.lift.start.distance(target)
    if mismatch > tol_join:
        raise NotComposable(f"Decorated morphisms do not chain: mismatch {mismatch:.3e}")
    shifted = m2.lift.act(cm.G.inv(cm.tau(m1.h)))
    return DecMorphism(shifted.compose(m1.lift, tol_join), cm.H.mul(m1.h, m2.h))


def dec_distance(cm: CrossedModule, a: DecMorphism, b: DecMorphism) -> float:
    return max(a.lift.distance(b.lift), cm.H.distance(a.h, b.h))


def functor_Sdec(cm: CrossedModule, m: DecMorphism) -> PPMorphism:
    """𝕊(γ̃; h) = (γ̃₁τ(h), γ̃₀; π∘γ̃)"""
    return PPMorphism(dec_target(cm, m), m.lift.start, m.lift.base)
