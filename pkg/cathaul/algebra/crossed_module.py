import itertools
import logging
from dataclasses import dataclass
from typing import Any, Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from cathaul.algebra.groups import FiniteGroup, Group
from cathaul.exceptions import FixtureError
from cathaul.models.report import ValidationReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CrossedModule:
    """(G, H, α, τ): τ: H → G a homomorphism, α: G × H → H an action by automorphisms"""
    G: Group
    H: Group
    alpha: Callable[[Any, Any], Any]
    tau: Callable[[Any], Any]
    name: str = 'crossed-module'
    # algebra-level maps in basis coordinates, Lie modules only
    alpha_star: Optional[Callable[[Any, Any], Any]] = None
    tau_star: Optional[Callable[[Any], Any]] = None

    def __repr__(self):
        return f'<CrossedModule {self.name}: {self.G.name} <- {self.H.name}>'

    @property
    def is_finite(self) -> bool:
        return self.G.is_finite and self.H.is_finite


def normal_subgroup_module(G: FiniteGroup, elements: Sequence[int], name: Optional[str] = None,
                           trivial_action: bool = False) -> CrossedModule:
    """Inclusion of a normal subgroup N ◁ G, acted on by conjugation (or trivially)"""
    H, embedding = G.subgroup(elements, name=f'{G.name}-normal')
    back = {g: i for i, g in enumerate(embedding)}

    if trivial_action:
        def alpha(g, h):
            return h
    else:
        for g in G.elements():
            for n in embedding:
                if G.conj(g, n) not in back:
                    raise FixtureError(f"Subgroup of {G.name} is not normal: conjugating {G.label(n)} "
                                       f"by {G.label(g)} leaves it")

        def alpha(g, h):
            return back[G.conj(g, embedding[h])]

    def tau(h):
        return embedding[h]

    return CrossedModule(G, H, alpha, tau, name=name or f'{G.name}/{H.name}')


def inner_module(G: Group, name: Optional[str] = None) -> CrossedModule:
    """(G, G, conjugation, identity)"""
    return CrossedModule(G, G, G.conj, lambda h: h, name=name or f'inner-{G.name}')


class _Worst:
    """Running maximum of a violation with the first input attaining it"""

    def __init__(self, tolerance: float):
        self.value = 0.0
        self.witness = None
        self.tolerance = tolerance
        self.checked = 0

    def update(self, value: float, witness: Callable[[], str]):
        self.checked += 1
        if value > self.value or (np.isnan(value) and not np.isnan(self.value)):
            self.value = value
            if value > self.tolerance or np.isnan(value):
                self.witness = witness()


def _draws(cm: CrossedModule, mode: str, samples: int, rng: np.random.Generator):
    """Element lists for G and H, and whether they are exhaustive"""
    if mode == 'exhaustive':
        if cm.is_finite:
            return list(cm.G.elements()), list(cm.H.elements()), True
        logger.warning(f"Exhaustive validation of {cm.name} is impossible; sampling {samples} elements instead")
    return cm.G.sample(rng, samples), cm.H.sample(rng, samples), False


def _pairs(first: List, second: List, exhaustive: bool) -> Iterable[Tuple[int, int]]:
    if exhaustive:
        return itertools.product(range(len(first)), range(len(second)))
    return zip(range(len(first)), range(len(second)))


def validate_crossed_module(cm: CrossedModule, mode: str = 'exhaustive', samples: int = 1000,
                            rng: Optional[np.random.Generator] = None) -> ValidationReport:
    """Check τ homomorphism, α action by automorphisms and both Peiffer identities"""
    rng = rng if rng is not None else np.random.default_rng(42)
    G, H = cm.G, cm.H
    gs, hs, exhaustive = _draws(cm, mode, samples, rng)
    # a second independent H sample so sampled mode also sees non-diagonal pairs
    hs2 = hs if exhaustive else H.sample(rng, len(hs))
    gs2 = gs if exhaustive else G.sample(rng, len(gs))
    tol_g, tol_h = G.tol, H.tol
    logger.info(f"Validating crossed module {cm.name} ({'exhaustive' if exhaustive else 'sampled'})")

    tau_hom = _Worst(tol_g)
    for i, j in _pairs(hs, hs2, exhaustive):
        h, k = hs[i], hs2[j]
        tau_hom.update(G.distance(cm.tau(H.mul(h, k)), G.mul(cm.tau(h), cm.tau(k))),
                       lambda: f'h={H.describe(h)}, k={H.describe(k)}')

    automorphism = _Worst(tol_h)
    action = _Worst(tol_h)
    peiffer_1 = _Worst(tol_g)
    for i, j in _pairs(gs, hs, exhaustive):
        g, h = gs[i], hs[j]
        partners = hs2 if exhaustive else [hs2[j]]
        for k in partners:
            automorphism.update(H.distance(cm.alpha(g, H.mul(h, k)), H.mul(cm.alpha(g, h), cm.alpha(g, k))),
                                lambda: f'g={G.describe(g)}, h={H.describe(h)}, k={H.describe(k)}')
        others = gs2 if exhaustive else [gs2[i]]
        for f in others:
            action.update(H.distance(cm.alpha(G.mul(g, f), h), cm.alpha(g, cm.alpha(f, h))),
                          lambda: f'g={G.describe(g)}, f={G.describe(f)}, h={H.describe(h)}')
        peiffer_1.update(G.distance(cm.tau(cm.alpha(g, h)), G.conj(g, cm.tau(h))),
                         lambda: f'g={G.describe(g)}, h={H.describe(h)}')

    if exhaustive:
        # α_g must also be a bijection
        for g in gs:
            if len({cm.alpha(g, h) for h in hs}) != len(hs):
                automorphism.update(1.0, lambda: f'g={G.describe(g)} is not injective')
    for h in hs:
        action.update(H.distance(cm.alpha(G.identity, h), h), lambda: f'alpha_e moves h={H.describe(h)}')

    peiffer_2 = _Worst(tol_h)
    for i, j in _pairs(hs, hs2, exhaustive):
        h, k = hs[i], hs2[j]
        peiffer_2.update(H.distance(cm.alpha(cm.tau(h), k), H.conj(h, k)),
                         lambda: f'h={H.describe(h)}, k={H.describe(k)}')

    report = ValidationReport(f'crossed-module:{cm.name}')
    for axiom, worst in (('tau_homomorphism', tau_hom), ('alpha_automorphism', automorphism),
                         ('alpha_action', action), ('peiffer_1', peiffer_1), ('peiffer_2', peiffer_2)):
        report.add(axiom, worst.value, worst.tolerance, worst.witness)
    report.extras['mode'] = 'exhaustive' if exhaustive else 'sampled'
    report.extras['draws'] = len(gs)
    return report
