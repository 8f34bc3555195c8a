"""Morphisms of the categorical group 𝐆 built from a crossed module, the pair
categorical group G•• and the functor S: 𝐆 → G••.

A morphism of 𝐆 is a pair (h, g) in the semidirect product H ⋊_α G with
source g and target τ(h)g. Categorical composition is

    (h₂, g₂) ∘ (h₁, g₁) = (h₂h₁, g₁)        when g₂ = τ(h₁)g₁

and the group product is

    (h₂, g₂)(h₁, g₁) = (h₂ α_{g₂}(h₁), g₂g₁),

the convention under which (h, g) may be written hg with α_g(h) = ghg⁻¹.
"""
import logging
from dataclasses import dataclass
from typing import Any, List, Optional, Tuple

import numpy as np

from cathaul.algebra.crossed_module import CrossedModule, _Worst
from cathaul.algebra.groups import Group
from cathaul.exceptions import NotComposable
from cathaul.models.report import ValidationReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CatGroupMorphism:
    """(h, g) ∈ H ⋊_α G"""
    h: Any
    g: Any

    def __repr__(self):
        return f'<CatGroupMorphism h={self.h!r} g={self.g!r}>'


@dataclass(frozen=True, eq=False)
class GddMorphism:
    """The unique morphism g1 ⟵ g0 of G••"""
    g1: Any
    g0: Any

    def __repr__(self):
        return f'<GddMorphism {self.g1!r} <- {self.g0!r}>'


def cg_source(cm: CrossedModule, m: CatGroupMorphism):
    return m.g


def cg_target(cm: CrossedModule, m: CatGroupMorphism):
    return cm.G.mul(cm.tau(m.h), m.g)


def cg_identity(cm: CrossedModule, g) -> CatGroupMorphism:
    return CatGroupMorphism(cm.H.identity, g)


def cg_compose(cm: CrossedModule, m2: CatGroupMorphism, m1: CatGroupMorphism) -> CatGroupMorphism:
    """m2 ∘ m1 (m1 first)"""
    if not cm.G.equal(m2.g, cg_target(cm, m1)):
        raise NotComposable(f"Source of second morphism differs from target of first by "
                            f"{cm.G.distance(m2.g, cg_target(cm, m1)):.3e}")
    return CatGroupMorphism(cm.H.mul(m2.h, m1.h), m1.g)


def cg_mul(cm: CrossedModule, m2: CatGroupMorphism, m1: CatGroupMorphism) -> CatGroupMorphism:
    return CatGroupMorphism(cm.H.mul(m2.h, cm.alpha(m2.g, m1.h)), cm.G.mul(m2.g, m1.g))


def cg_inverse(cm: CrossedModule, m: CatGroupMorphism) -> CatGroupMorphism:
    """Inverse in the morphism group H ⋊_α G"""
    g_inv = cm.G.inv(m.g)
    return CatGroupMorphism(cm.alpha(g_inv, cm.H.inv(m.h)), g_inv)


def cg_reverse(cm: CrossedModule, m: CatGroupMorphism) -> CatGroupMorphism:
    """Categorical inverse: a morphism from t(m) back to s(m)"""
    return CatGroupMorphism(cm.H.inv(m.h), cg_target(cm, m))


def cg_distance(cm: CrossedModule, a: CatGroupMorphism, b: CatGroupMorphism) -> float:
    return max(cm.H.distance(a.h, b.h), cm.G.distance(a.g, b.g))


def gdd_from_endpoints(g1, g0) -> GddMorphism:
    return GddMorphism(g1, g0)


def gdd_identity(g) -> GddMorphism:
    return GddMorphism(g, g)


def gdd_as_pair(G: Group, m: GddMorphism) -> CatGroupMorphism:
    """g1 ⟵ g0 as (g1 g0⁻¹, g0) in the inner crossed module of G"""
    return CatGroupMorphism(G.mul(m.g1, G.inv(m.g0)), m.g0)


def gdd_from_pair(G: Group, pair: CatGroupMorphism) -> GddMorphism:
    return GddMorphism(G.mul(pair.h, pair.g), pair.g)


def gdd_compose(G: Group, m2: GddMorphism, m1: GddMorphism) -> GddMorphism:
    if not G.equal(m2.g0, m1.g1):
        raise NotComposable(f"G•• morphisms do not chain: distance {G.distance(m2.g0, m1.g1):.3e}")
    return GddMorphism(m2.g1, m1.g0)


def gdd_mul(G: Group, m2: GddMorphism, m1: GddMorphism) -> GddMorphism:
    return GddMorphism(G.mul(m2.g1, m1.g1), G.mul(m2.g0, m1.g0))


def gdd_distance(G: Group, a: GddMorphism, b: GddMorphism) -> float:
    return max(G.distance(a.g1, b.g1), G.distance(a.g0, b.g0))


def functor_S(cm: CrossedModule, m: CatGroupMorphism) -> GddMorphism:
    """t(m) ⟵ s(m); the identity on objects"""
    return GddMorphism(cg_target(cm, m), m.g)


def _morphisms(cm: CrossedModule, exhaustive: bool, samples: int, rng) -> List[CatGroupMorphism]:
    if exhaustive:
        return [CatGroupMorphism(h, g) for h in cm.H.elements() for g in cm.G.elements()]
    return [CatGroupMorphism(h, g) for h, g in zip(cm.H.sample(rng, samples), cm.G.sample(rng, samples))]


def _composable_pairs(cm: CrossedModule, morphisms: List[CatGroupMorphism], exhaustive: bool,
                      rng) -> List[Tuple[CatGroupMorphism, CatGroupMorphism]]:
    """(m1, m2) with m2 ∘ m1 defined"""
    pairs = []
    if exhaustive:
        for m1 in morphisms:
            target = cg_target(cm, m1)
            for h in cm.H.elements():
                pairs.append((m1, CatGroupMorphism(h, target)))
    else:
        for m1, h in zip(morphisms, cm.H.sample(rng, len(morphisms))):
            pairs.append((m1, CatGroupMorphism(h, cg_target(cm, m1))))
    return pairs


def check_categorical_group(cm: CrossedModule, mode: str = 'exhaustive', samples: int = 200,
                            rng: Optional[np.random.Generator] = None) -> ValidationReport:
    """Category, group and interchange laws of 𝐆, plus functoriality of S

    Exhaustive mode walks every morphism, composable pair and composable quadruple
    of a finite module; Lie modules are sampled.
    """
    rng = rng if rng is not None else np.random.default_rng(42)
    exhaustive = mode == 'exhaustive' and cm.is_finite
    if mode == 'exhaustive' and not exhaustive:
        logger.warning(f"Categorical group {cm.name} is not finite; sampling {samples} morphisms")
    G = cm.G
    tol = max(cm.G.tol, cm.H.tol)
    morphisms = _morphisms(cm, exhaustive, samples, rng)
    pairs = _composable_pairs(cm, morphisms, exhaustive, rng)
    logger.info(f"Checking categorical group laws of {cm.name}: {len(morphisms)} morphisms, {len(pairs)} pairs")

    def dist(a, b):
        return cg_distance(cm, a, b)

    identity = _Worst(tol)
    for m in morphisms:
        left = cg_compose(cm, cg_identity(cm, cg_target(cm, m)), m)
        right = cg_compose(cm, m, cg_identity(cm, m.g))
        identity.update(max(dist(left, m), dist(right, m)), lambda: repr(m))

    associativity = _Worst(tol)
    for m1, m2 in pairs:
        extensions = cm.H.elements() if exhaustive else cm.H.sample(rng, 1)
        for h in extensions:
            m3 = CatGroupMorphism(h, cg_target(cm, m2))
            left = cg_compose(cm, m3, cg_compose(cm, m2, m1))
            right = cg_compose(cm, cg_compose(cm, m3, m2), m1)
            associativity.update(dist(left, right), lambda: f'{m1!r}, {m2!r}, {m3!r}')

    source_hom = _Worst(G.tol)
    target_hom = _Worst(G.tol)
    product = _Worst(G.tol)
    partners = morphisms if exhaustive else list(reversed(morphisms))
    for i, a in enumerate(morphisms):
        others = partners if exhaustive else [partners[i]]
        for b in others:
            ab = cg_mul(cm, a, b)
            source_hom.update(G.distance(cg_source(cm, ab), G.mul(cg_source(cm, a), cg_source(cm, b))),
                              lambda: f'{a!r}, {b!r}')
            target_hom.update(G.distance(cg_target(cm, ab), G.mul(cg_target(cm, a), cg_target(cm, b))),
                              lambda: f'{a!r}, {b!r}')
            product.update(gdd_distance(G, functor_S(cm, ab), gdd_mul(G, functor_S(cm, a), functor_S(cm, b))),
                           lambda: f'{a!r}, {b!r}')

    interchange = _Worst(tol)
    functor_compose = _Worst(G.tol)
    second = pairs if exhaustive else list(reversed(pairs))
    for i, (a1, a2) in enumerate(pairs):
        functor_compose.update(
            gdd_distance(G, functor_S(cm, cg_compose(cm, a2, a1)),
                         gdd_compose(G, functor_S(cm, a2), functor_S(cm, a1))),
            lambda: f'{a1!r}, {a2!r}')
        others = second if exhaustive else [second[i]]
        for b1, b2 in others:
            left = cg_compose(cm, cg_mul(cm, a2, b2), cg_mul(cm, a1, b1))
            right = cg_mul(cm, cg_compose(cm, a2, a1), cg_compose(cm, b2, b1))
            interchange.update(dist(left, right), lambda: f'{a1!r}, {a2!r}, {b1!r}, {b2!r}')

    report = ValidationReport(f'categorical-group:{cm.name}')
    for axiom, worst in (('identity_law', identity), ('associativity', associativity),
                         ('interchange', interchange), ('source_homomorphism', source_hom),
                         ('target_homomorphism', target_hom), ('functor_S_composition', functor_compose),
                         ('functor_S_product', product)):
        report.add(axiom, worst.value, worst.tolerance, worst.witness)
    report.extras['mode'] = 'exhaustive' if exhaustive else 'sampled'
    report.extras['composable_pairs'] = len(pairs)
    return report
