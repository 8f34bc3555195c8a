"""Pushforward of categorical connections along a morphism of categorical bundles.

A pair (𝕊, S) maps objects and morphisms of 𝐏 to those of 𝐐 and the structure
categorical group of 𝐏 to that of 𝐐, with 𝕊(pg) = 𝕊(p)S(g) and
𝕊(m·φ) = 𝕊(m)·S(φ). The pushed connection is

    τ_𝐐(γ; q) = 𝕊(τ_𝐏(γ; p))·1_k,    q = 𝕊(p)k,

for any p over the start of γ.
"""
import logging
from dataclasses import dataclass
from typing import Any, Callable, List, Optional, Sequence

import numpy as np

from cathaul.algebra.catgroup import CatGroupMorphism, GddMorphism, functor_S
from cathaul.algebra.crossed_module import _Worst
from cathaul.bundle.connection import BundlePoint
from cathaul.catbundle.connections import CatConnection
from cathaul.catbundle.morphisms import PPMorphism, functor_Sdec, path_distance
from cathaul.catbundle.spaces import CategoricalBundle, DecoratedBundle, PairBundle
from cathaul.exceptions import FiberSolveFailed
from cathaul.lie.groups import MatrixLieGroup
from cathaul.models.report import ValidationReport
from cathaul.paths.sampled_path import JOIN_TOL, SampledPath

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BundleMorphismPair:
    """(𝕊, S) from `source` to `target`"""
    source: CategoricalBundle
    target: CategoricalBundle
    obj_map: Callable[[BundlePoint], BundlePoint]
    mor_map: Callable[[Any], Any]
    group_map: Callable[[Any], Any]
    morphism_group_map: Callable[[Any], Any]
    name: str = 'pair'
    tol: float = JOIN_TOL

    def __repr__(self):
        return f'<BundleMorphismPair {self.name}: {self.source.name} -> {self.target.name}>'

    def fiber_solver(self, p: BundlePoint, q: BundlePoint):
        """k with q = 𝕊(p)k"""
        image = self.obj_map(p)
        mismatch = float(np.linalg.norm(image.x - q.x))
        if mismatch > self.tol:
            raise FiberSolveFailed(f"𝕊(p) lies over a base point {mismatch:.3e} away from q")
        K = self.target.group
        k = K.mul(K.inv(image.g), q.g)
        residual = image.act(k).distance(q)
        if residual > self.tol:
            raise FiberSolveFailed(f"No structure group element relates 𝕊(p) and q (residual {residual:.3e})")
        return k

    def validate(self, morphisms: Sequence[Any], points: Sequence[BundlePoint], elements: Sequence[Any],
                 group_morphisms: Sequence[Any], tol: float = 1e-10) -> ValidationReport:
        """Equivariance on objects and morphisms, projection and source/target compatibility"""
        P, Q = self.source, self.target
        objects = _Worst(tol)
        for i, (p, g) in enumerate(zip(points, elements)):
            objects.update(self.obj_map(p.act(g)).distance(self.obj_map(p).act(self.group_map(g))),
                           lambda: f'point[{i}]')
        morphism_action = _Worst(tol)
        projection = _Worst(tol)
        ends = _Worst(tol)
        for i, (m, phi) in enumerate(zip(morphisms, group_morphisms)):
            image = self.mor_map(m)
            morphism_action.update(Q.distance(self.mor_map(P.act(m, phi)),
                                              Q.act(image, self.morphism_group_map(phi))),
                                   lambda: f'morphism[{i}]')
            projection.update(path_distance(Q.base_path(image), P.base_path(m)), lambda: f'morphism[{i}]')
            ends.update(max(Q.source(image).distance(self.obj_map(P.source(m))),
                            Q.target(image).distance(self.obj_map(P.target(m)))),
                        lambda: f'morphism[{i}]')
        report = ValidationReport(f'bundle-pair:{self.name}')
        for check, worst in (('object_equivariance', objects), ('morphism_equivariance', morphism_action),
                             ('projection', projection), ('source_target', ends)):
            report.add(check, worst.value, worst.tolerance, worst.witness)
        return report


def identity_pair(space: CategoricalBundle) -> BundleMorphismPair:
    return BundleMorphismPair(space, space, lambda p: p, lambda m: m, lambda g: g, lambda phi: phi,
                              name=f'identity({space.name})')


def sdec_pair(space: DecoratedBundle) -> BundleMorphismPair:
    """P^{A,dec} → P•• with 𝕊 = functor_Sdec and S = functor_S"""
    cm = space.cm
    return BundleMorphismPair(space, PairBundle(space.bundle), lambda p: p, lambda m: functor_Sdec(cm, m),
                              lambda g: g, lambda phi: functor_S(cm, phi), name='Sdec')


def structure_group_pair(space: PairBundle, target_group: MatrixLieGroup,
                         hom: Callable[[np.ndarray], np.ndarray]) -> BundleMorphismPair:
    """P•• over G → Q•• over K induced by a homomorphism s: G → K"""
    target = PairBundle(space.bundle.with_group(target_group))

    def obj_map(p):
        return BundlePoint(p.x, hom(p.g))

    def mor_map(m):
        return PPMorphism(obj_map(m.p1), obj_map(m.p0), m.gamma)

    return BundleMorphismPair(space, target, obj_map, mor_map, hom,
                              lambda phi: GddMorphism(hom(phi.g1), hom(phi.g0)),
                              name=f'{space.group.name}->{target_group.name}')


def default_section(pair: BundleMorphismPair, q: BundlePoint) -> BundlePoint:
    """The identity-fiber point of 𝐏 over π(q)"""
    return BundlePoint(q.x, pair.source.group.identity)


def pushforward_lift(tauP: CatConnection, pair: BundleMorphismPair, gamma: SampledPath, q: BundlePoint,
                     p: BundlePoint):
    """𝕊(τ_𝐏(γ; p))·1_k with q = 𝕊(p)k, for an explicit choice of p"""
    k = pair.fiber_solver(p, q)
    return pair.target.act_identity(pair.mor_map(tauP.lift(gamma, p)), k)


def conn_pushforward_general(tauP: CatConnection, pair: BundleMorphismPair,
                             section: Optional[Callable[[BundlePoint], BundlePoint]] = None) -> CatConnection:
    """τ_𝐐(γ, q) = 𝕊(τ_𝐏(γ, p))k_{p,q}"""
    if tauP.space is not pair.source and tauP.space.name != pair.source.name:
        raise ValueError(f"{tauP!r} does not live on the source of {pair!r}")
    choose = section or (lambda q: default_section(pair, q))

    def lift(gamma, q):
        return pushforward_lift(tauP, pair, gamma, q, choose(q))

    return CatConnection(pair.target, lift, 'pushforward-general', name=f'{pair.name}*({tauP.name})')


def well_definedness(tauP: CatConnection, pair: BundleMorphismPair, gamma: SampledPath, q: BundlePoint,
                     a_values: List[Any]) -> float:
    """Largest spread of τ_𝐐(γ; q) over fiber representatives p·a"""
    p = default_section(pair, q)
    reference = pushforward_lift(tauP, pair, gamma, q, p)
    spread = 0.0
    for a in a_values:
        other = pushforward_lift(tauP, pair, gamma, q, p.act(a))
        spread = max(spread, pair.target.distance(reference, other))
    return spread
