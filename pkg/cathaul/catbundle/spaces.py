"""Categorical principal bundles over a trivial bundle, behind one interface.

A space bundles the morphism arithmetic of P•• or P^{A,dec} with its
structure categorical group, so connections, pushforwards and the CC checks
can be written once.
"""
import logging
from typing import Any, List, Optional

import numpy as np

from cathaul.algebra.catgroup import (CatGroupMorphism, GddMorphism, cg_identity, cg_mul, gdd_identity,
                                      gdd_mul)
from cathaul.algebra.crossed_module import CrossedModule
from cathaul.bundle.connection import BundlePoint, ConnectionForm, TrivialBundle
from cathaul.catbundle.morphisms import (DecMorphism, PPMorphism, dec_act, dec_compose, dec_distance,
                                         dec_identity, dec_source, dec_target, pp_act, pp_compose,
                                         pp_distance, pp_identity, pp_source, pp_target)
from cathaul.paths.sampled_path import JOIN_TOL, SampledPath

logger = logging.getLogger(__name__)


class CategoricalBundle:
    """Interface shared by P•• and P^{A,dec}"""

    kind = 'categorical'

    def __init__(self, bundle: TrivialBundle, name: str):
        self.bundle = bundle
        self.name = name

    def __repr__(self):
        return f'<{type(self).__name__} {self.name}>'

    @property
    def group(self):
        return self.bundle.group

    def identity(self, p: BundlePoint, gamma: Optional[SampledPath] = None):
        raise NotImplementedError

    def source(self, m) -> BundlePoint:
        raise NotImplementedError

    def target(self, m) -> BundlePoint:
        raise NotImplementedError

    def compose(self, m2, m1, tol_join: float = JOIN_TOL):
        raise NotImplementedError

    def act(self, m, phi):
        raise NotImplementedError

    def group_identity(self, g):
        """The identity morphism 1_g of the structure categorical group"""
        raise NotImplementedError

    def group_mul(self, phi, psi):
        raise NotImplementedError

    def sample_group_morphisms(self, rng: np.random.Generator, count: int) -> List[Any]:
        raise NotImplementedError

    def act_identity(self, m, g):
        return self.act(m, self.group_identity(g))

    def distance(self, a, b) -> float:
        raise NotImplementedError

    def base_path(self, m) -> SampledPath:
        raise NotImplementedError


class PairBundle(CategoricalBundle):
    """P•• with structure categorical group G••"""

    kind = 'pair'

    def __init__(self, bundle: TrivialBundle, name: Optional[str] = None):
        super().__init__(bundle, name or f'{bundle.name}••')

    def identity(self, p, gamma=None) -> PPMorphism:
        return pp_identity(p, gamma)

    def source(self, m: PPMorphism) -> BundlePoint:
        return pp_source(m)

    def target(self, m: PPMorphism) -> BundlePoint:
        return pp_target(m)

    def compose(self, m2, m1, tol_join=JOIN_TOL) -> PPMorphism:
        return pp_compose(m2, m1, tol_join)

    def act(self, m, phi: GddMorphism) -> PPMorphism:
        return pp_act(m, phi)

    def group_identity(self, g) -> GddMorphism:
        return gdd_identity(g)

    def group_mul(self, phi, psi) -> GddMorphism:
        return gdd_mul(self.group, phi, psi)

    def sample_group_morphisms(self, rng, count) -> List[GddMorphism]:
        return [GddMorphism(g1, g0) for g1, g0 in zip(self.group.sample(rng, count), self.group.sample(rng, count))]

    def distance(self, a, b) -> float:
        return pp_distance(a, b)

    def base_path(self, m: PPMorphism) -> SampledPath:
        return m.gamma


class DecoratedBundle(CategoricalBundle):
    """P^{A,dec} with structure categorical group built from a crossed module"""

    kind = 'decorated'

    def __init__(self, cm: CrossedModule, connection: ConnectionForm, name: Optional[str] = None):
        if connection.group is not cm.G and connection.group.name != cm.G.name:
            raise ValueError(f"Connection group {connection.group.name} is not the G of {cm.name}")
        super().__init__(connection.bundle, name or f'{connection.bundle.name}^{connection.name},dec')
        self.cm = cm
        self.connection = connection

    def identity(self, p, gamma=None) -> DecMorphism:
        return dec_identity(self.cm, p, gamma)

    def source(self, m: DecMorphism) -> BundlePoint:
        return dec_source(self.cm, m)

    def target(self, m: DecMorphism) -> BundlePoint:
        return dec_target(self.cm, m)

    def compose(self, m2, m1, tol_join=JOIN_TOL) -> DecMorphism:
        return dec_compose(self.cm, m2, m1, tol_join)

    def act(self, m, phi: CatGroupMorphism) -> DecMorphism:
        return dec_act(self.cm, m, phi)

    def group_identity(self, g) -> CatGroupMorphism:
        return cg_identity(self.cm, g)

    def group_mul(self, phi, psi) -> CatGroupMorphism:
        return cg_mul(self.cm, phi, psi)

    def sample_group_morphisms(self, rng, count) -> List[CatGroupMorphism]:
        return [CatGroupMorphism(h, g) for h, g in zip(self.cm.H.sample(rng, count), self.cm.G.sample(rng, count))]

    def distance(self, a, b) -> float:
        return dec_distance(self.cm, a, b)

    def base_path(self, m: DecMorphism) -> SampledPath:
        return m.lift.base
