import json
import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from cathaul.exceptions import FixtureError

logger = logging.getLogger(__name__)


class Group(ABC):
    """Common interface of finite groups and matrix Lie groups"""

    kind = 'abstract'
    name = 'group'
    tol = 0.0

    @property
    @abstractmethod
    def identity(self) -> Any:
        """Neutral element"""

    @abstractmethod
    def mul(self, a, b):
        """Product a·b"""

    @abstractmethod
    def inv(self, a):
        """Inverse a⁻¹"""

    @abstractmethod
    def distance(self, a, b) -> float:
        """0 for equal elements; Frobenius distance for matrix groups"""

    @abstractmethod
    def sample(self, rng: np.random.Generator, count: int) -> List[Any]:
        """Draw `count` elements deterministically from `rng`"""

    @property
    def is_finite(self) -> bool:
        return self.kind == 'finite'

    def equal(self, a, b) -> bool:
        return self.distance(a, b) <= self.tol

    def conj(self, g, h):
        """g h g⁻¹"""
        return self.mul(self.mul(g, h), self.inv(g))

    def prod(self, *elements):
        result = self.identity
        for element in elements:
            result = self.mul(result, element)
        return result

    def describe(self, a) -> str:
        return repr(a)


class FiniteGroup(Group):
    """Finite group given by its multiplication table; elements are row indices"""

    kind = 'finite'

    def __init__(self, table, labels: Optional[Sequence[str]] = None, name: str = 'finite'):
        table = np.asarray(table, dtype=int)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise FixtureError(f"Multiplication table of {name} must be a non-empty square array")
        order = table.shape[0]
        if table.min() < 0 or table.max() >= order:
            raise FixtureError(f"Multiplication table of {name} has entries outside 0..{order - 1}")

        self.name = name
        self.order = order
        self.table = table
        self.table.setflags(write=False)
        self.labels = list(labels) if labels is not None else [str(i) for i in range(order)]
        if len(self.labels) != order or len(set(self.labels)) != order:
            raise FixtureError(f"{name} needs {order} distinct labels")
        self._index = {label: i for i, label in enumerate(self.labels)}

        rows = np.arange(order)
        candidates = [e for e in range(order) if np.array_equal(table[e], rows) and np.array_equal(table[:, e], rows)]
        if not candidates:
            raise FixtureError(f"{name} has no identity element")
        self._identity = candidates[0]

        self._inverse = []
        for a in range(order):
            found = np.nonzero(table[a] == self._identity)[0]
            if len(found) != 1 or table[found[0], a] != self._identity:
                raise FixtureError(f"Element {self.labels[a]} of {name} has no two-sided inverse")
            self._inverse.append(int(found[0]))

    def __repr__(self):
        return f'<FiniteGroup {self.name} of order {self.order}>'

    @property
    def identity(self) -> int:
        return self._identity

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def distance(self, a: int, b: int) -> float:
        return 0.0 if int(a) == int(b) else 1.0

    def sample(self, rng: np.random.Generator, count: int) -> List[int]:
        return [int(i) for i in rng.integers(0, self.order, size=count)]

    def elements(self) -> range:
        return range(self.order)

    def element(self, label: str) -> int:
        """Index of the element with the given label"""
        if label not in self._index:
            raise KeyError(f"Unknown element label {label!r} in {self.name}")
        return self._index[label]

    def label(self, a: int) -> str:
        return self.labels[a]

    def describe(self, a: int) -> str:
        return self.labels[a]

    def validate_axioms(self) -> List[str]:
        """Exhaustive associativity check; identity and inverses are checked on construction"""
        problems = []
        t = self.table
        # (ab)c == a(bc) for all triples, vectorized over c
        for a in range(self.order):
            for b in range(self.order):
                left = t[t[a, b]]
                right = t[a][t[b]]
                bad = np.nonzero(left != right)[0]
                if len(bad):
                    c = int(bad[0])
                    problems.append(f"associativity fails at ({self.labels[a]}, {self.labels[b]}, {self.labels[c]})")
        return problems

    def subgroup(self, elements: Sequence[int], name: Optional[str] = None) -> Tuple['FiniteGroup', List[int]]:
        """Induced group on a closed subset, plus the embedding into this group"""
        embedding = sorted(set(int(e) for e in elements))
        if self._identity not in embedding:
            raise FixtureError(f"Subset of {self.name} does not contain the identity")
        embedding.remove(self._identity)
        embedding.insert(0, self._identity)
        back = {g: i for i, g in enumerate(embedding)}
        table = []
        for a in embedding:
            row = []
            for b in embedding:
                product = self.mul(a, b)
                if product not in back:
                    raise FixtureError(f"Subset of {self.name} is not closed under multiplication")
                row.append(back[product])
            table.append(row)
        labels = [self.labels[g] for g in embedding]
        return FiniteGroup(table, labels, name or f'{self.name}-subgroup'), embedding

    def to_dict(self) -> Dict[str, Any]:
        return {
            'order': self.order,
            'table': self.table.tolist(),
            'labels': list(self.labels)
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], name: str = 'finite') -> 'FiniteGroup':
        try:
            order = int(data['order'])
            table = data['table']
        except (KeyError, TypeError, ValueError) as e:
            raise FixtureError(f"Finite group {name} needs 'order' and 'table': {str(e)}")
        if len(table) != order:
            raise FixtureError(f"Finite group {name} declares order {order} but has {len(table)} rows")
        return cls(table, data.get('labels'), name=data.get('name', name))

    @classmethod
    def from_json(cls, path) -> 'FiniteGroup':
        path = Path(path)
        try:
            with open(path) as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise FixtureError(f"Cannot read group table {path}: {str(e)}")
        return cls.from_dict(data, name=path.stem)

    @classmethod
    def from_permutations(cls, perms: Sequence[Tuple[int, ...]], labels: Optional[Sequence[str]] = None,
                          name: str = 'permutations') -> 'FiniteGroup':
        """Group of permutations (tuples i -> perm[i]); product applies the right factor first"""
        perms = [tuple(p) for p in perms]
        index = {p: i for i, p in enumerate(perms)}
        table = []
        for a in perms:
            row = []
            for b in perms:
                composed = tuple(a[b[i]] for i in range(len(b)))
                if composed not in index:
                    raise FixtureError(f"Permutations of {name} are not closed under composition")
                row.append(index[composed])
            table.append(row)
        if labels is None:
            labels = [cycle_label(p) for p in perms]
        return cls(table, labels, name=name)


def cycle_label(perm: Sequence[int]) -> str:
    """Cycle notation on 1..n, 'e' for the identity"""
    seen = set()
    cycles = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle = []
        i = start
        while i not in seen:
            seen.add(i)
            cycle.append(str(i + 1))
            i = perm[i]
        cycles.append('(' + ''.join(cycle) + ')')
    return ''.join(cycles) or 'e'


def _closure(generators: Sequence[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    n = len(generators[0])
    identity = tuple(range(n))
    elements = [identity]
    frontier = [identity]
    while frontier:
        new = []
        for a in frontier:
            for s in generators:
                product = tuple(s[a[i]] for i in range(n))
                if product not in elements:
                    elements.append(product)
                    new.append(product)
        frontier = new
    return elements


def symmetric_group(n: int) -> FiniteGroup:
    """S_n generated by a transposition and an n-cycle"""
    if n < 2:
        raise ValueError("symmetric_group needs n >= 2")
    transposition = tuple([1, 0] + list(range(2, n)))
    rotation = tuple(list(range(1, n)) + [0])
    return FiniteGroup.from_permutations(_closure([transposition, rotation]), name=f'S{n}')


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon acting on its vertices"""
    if n < 3:
        raise ValueError("dihedral_group needs n >= 3")
    rotation = tuple((i + 1) % n for i in range(n))
    reflection = tuple((-i) % n for i in range(n))
    return FiniteGroup.from_permutations(_closure([rotation, reflection]), name=f'D{n}')


def builtin_group(spec: Dict[str, Any]) -> FiniteGroup:
    """Finite group from a {'builtin': 'symmetric'|'dihedral', 'n': k} descriptor"""
    kind = spec.get('builtin')
    try:
        n = int(spec['n'])
    except (KeyError, TypeError, ValueError):
        raise FixtureError(f"Builtin group descriptor {spec} needs an integer 'n'")
    if kind == 'symmetric':
        return symmetric_group(n)
    if kind == 'dihedral':
        return dihedral_group(n)
    raise FixtureError(f"Unknown builtin group {kind!r}")
