"""JSON fixtures: a crossed module, optionally with a trivial bundle, a connection,
a shift form, gauge data and a reference path.

    {
      "name": "su2_testbed",
      "crossed_module": {"builtin": "su2_adjoint"},
      "base": {"lower": [-1, -1], "upper": [1, 1]},
      "connection": {"family": "linear", ...},
      "shift": {"family": "constant", ...},
      "gauge": {"theta": {"family": "exp_linear", ...}, "lambda": {...} | "compatible"},
      "reference_path": {"family": "arc", ...},
      "structure_pushforward": {"target": "SO3"}
    }

Finite fixtures carry only "crossed_module", built from "normal_subgroup" or
"inner" with a group given by table or {"builtin": ..., "n": ...}.
"""
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Optional

import numpy as np

from cathaul.algebra.crossed_module import CrossedModule, inner_module, normal_subgroup_module
from cathaul.algebra.groups import FiniteGroup, builtin_group
from cathaul.bundle.connection import ConnectionForm, ShiftForm, TrivialBundle
from cathaul.bundle.fields import field_from_descriptor
from cathaul.exceptions import FixtureError
from cathaul.gauge.forms import decoration_from_descriptor, gauge_from_descriptor
from cathaul.gauge.transform import CatGaugeTransform, functorial_gauge
from cathaul.lie.crossed_modules import so3_cover_module, su2_adjoint_module
from cathaul.lie.groups import SO3, SU2, MatrixLieGroup
from cathaul.paths.families import path_from_descriptor
from cathaul.paths.sampled_path import SampledPath

logger = logging.getLogger(__name__)


@dataclass
class StructurePushforward:
    """Lie homomorphism s: G → K with its differential, for the classical pushforward"""
    target: MatrixLieGroup
    hom: Callable[[np.ndarray], np.ndarray]
    hom_star: Callable[[np.ndarray], np.ndarray]


@dataclass
class Fixture:
    name: str
    cm: CrossedModule
    bundle: Optional[TrivialBundle] = None
    connection: Optional[ConnectionForm] = None
    shift: Optional[ShiftForm] = None
    gauge: Optional[CatGaugeTransform] = None
    reference: Optional[Dict[str, Any]] = None
    structure_pushforward: Optional[StructurePushforward] = None
    raw: Dict[str, Any] = field(default_factory=dict, repr=False)

    def __repr__(self):
        return f'<Fixture {self.name}: {self.cm.name}>'

    @property
    def is_lie(self) -> bool:
        return isinstance(self.cm.G, MatrixLieGroup) and isinstance(self.cm.H, MatrixLieGroup)

    def require_bundle(self):
        if self.connection is None:
            raise FixtureError(f"Fixture {self.name} defines no base and connection")

    def reference_path(self, n_steps: int) -> SampledPath:
        self.require_bundle()
        if self.reference is None:
            raise FixtureError(f"Fixture {self.name} defines no reference path")
        path = path_from_descriptor(self.reference, n_steps)
        self.bundle.check_domain(path.samples)
        return path


def _finite_group(descriptor: Dict[str, Any]) -> FiniteGroup:
    if 'builtin' in descriptor:
        return builtin_group(descriptor)
    return FiniteGroup.from_dict(descriptor, name=descriptor.get('name', 'finite'))


def crossed_module_from_descriptor(descriptor: Dict[str, Any]) -> CrossedModule:
    if not isinstance(descriptor, dict):
        raise FixtureError("'crossed_module' must be an object")
    builtin = descriptor.get('builtin')
    if builtin == 'su2_adjoint':
        return su2_adjoint_module()
    if builtin == 'so3_cover':
        return so3_cover_module()
    if builtin is not None:
        raise FixtureError(f"Unknown builtin crossed module {builtin!r}")
    if 'normal_subgroup' in descriptor:
        spec = descriptor['normal_subgroup']
        G = _finite_group(spec.get('group', {}))
        try:
            elements = [G.element(label) for label in spec['subgroup']]
        except KeyError as e:
            raise FixtureError(f"Normal subgroup descriptor is missing or names an unknown element: {str(e)}")
        return normal_subgroup_module(G, elements, name=descriptor.get('name'),
                                      trivial_action=bool(spec.get('trivial_action', False)))
    if 'inner' in descriptor:
        return inner_module(_finite_group(descriptor['inner'].get('group', {})), name=descriptor.get('name'))
    raise FixtureError(f"Cannot build a crossed module from keys {sorted(descriptor)}")


def _structure_pushforward(descriptor: Dict[str, Any], cm: CrossedModule) -> StructurePushforward:
    target = descriptor.get('target')
    if target == 'SO3' and isinstance(cm.G, SU2):
        # double cover; identity in the shared coordinates
        return StructurePushforward(SO3(), cm.G.rotation, lambda x: np.array(x, dtype=float))
    raise FixtureError(f"No structure pushforward from {cm.G.name} to {target!r}")


def fixture_from_dict(data: Dict[str, Any], name: str = 'fixture') -> Fixture:
    name = data.get('name', name)
    cm = crossed_module_from_descriptor(data.get('crossed_module'))
    fixture = Fixture(name, cm, raw=data)
    if 'base' not in data:
        return fixture
    if not fixture.is_lie:
        raise FixtureError(f"Fixture {name} puts a bundle on the finite module {cm.name}")
    try:
        bundle = TrivialBundle(cm.G, data['base']['lower'], data['base']['upper'], name=name)
        d, k = bundle.base_dim, cm.G.dim
        fixture.bundle = bundle
        fixture.connection = ConnectionForm(bundle, field_from_descriptor(data.get('connection', {'family': 'zero'}),
                                                                          d, k), name='A')
        if 'shift' in data:
            fixture.shift = ShiftForm(bundle, field_from_descriptor(data['shift'], d, k), name='C')
        if 'gauge' in data:
            fixture.gauge = _gauge(data['gauge'], fixture)
        fixture.reference = data.get('reference_path')
        if 'structure_pushforward' in data:
            fixture.structure_pushforward = _structure_pushforward(data['structure_pushforward'], cm)
    except (KeyError, TypeError) as e:
        raise FixtureError(f"Fixture {name} is malformed: {str(e)}")
    except ValueError as e:
        raise FixtureError(f"Fixture {name} is inconsistent: {str(e)}")
    return fixture


def _gauge(descriptor: Dict[str, Any], fixture: Fixture) -> CatGaugeTransform:
    cm, d = fixture.cm, fixture.bundle.base_dim
    theta = gauge_from_descriptor(descriptor.get('theta', {'family': 'identity'}), cm.G, d)
    decoration = descriptor.get('lambda')
    if decoration == 'compatible':
        return functorial_gauge(fixture.connection, theta, cm, name=descriptor.get('name', 'Theta'))
    return CatGaugeTransform(cm, theta, decoration_from_descriptor(decoration, cm, d),
                             name=descriptor.get('name', 'Theta'))


def load_fixture(path) -> Fixture:
    """Read and build a fixture; every failure surfaces as FixtureError"""
    path = Path(path)
    try:
        with open(path) as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise FixtureError(f"Cannot read fixture {path}: {str(e)}")
    if not isinstance(data, dict):
        raise FixtureError(f"Fixture {path} must hold a JSON object")
    fixture = fixture_from_dict(data, name=path.stem)
    logger.info(f"Loaded fixture {fixture.name} ({fixture.cm.name})")
    return fixture
