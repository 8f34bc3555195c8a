import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


def _clean(value: float) -> Optional[float]:
    value = float(value)
    if math.isnan(value):
        return None
    return value


@dataclass
class CheckEntry:
    """One checked property: residual against tolerance"""
    id: str
    residual: float
    tolerance: float
    witness: Optional[str] = None

    @property
    def passed(self) -> bool:
        # NaN never passes
        return bool(self.residual <= self.tolerance)

    def __repr__(self):
        status = 'pass' if self.passed else 'FAIL'
        return f'<CheckEntry {self.id} {self.residual:.3e} <= {self.tolerance:.1e} {status}>'

    def to_dict(self):
        """Convert entry to dictionary for JSON serialization"""
        return {
            'id': self.id,
            'residual': _clean(self.residual),
            'tolerance': self.tolerance,
            'pass': self.passed,
            'witness': self.witness
        }


@dataclass
class CheckReport:
    """Named collection of check entries; passes iff every entry passes"""
    name: str
    entries: List[CheckEntry] = field(default_factory=list)
    slopes: Dict[str, float] = field(default_factory=dict)
    extras: Dict[str, Any] = field(default_factory=dict)
    wall_time: Optional[float] = None

    @property
    def passed(self) -> bool:
        return all(entry.passed for entry in self.entries)

    def add(self, id: str, residual: float, tolerance: float, witness: Optional[str] = None) -> CheckEntry:
        entry = CheckEntry(id, float(residual), float(tolerance), witness)
        self.entries.append(entry)
        return entry

    def entry(self, id: str) -> CheckEntry:
        for entry in self.entries:
            if entry.id == id:
                return entry
        raise KeyError(f"No entry {id!r} in report {self.name}")

    def residual(self, id: str) -> float:
        return self.entry(id).residual

    def merge(self, other: 'CheckReport', prefix: Optional[str] = None) -> 'CheckReport':
        """Append another report's entries, slopes and extras under a prefix"""
        prefix = other.name if prefix is None else prefix
        for entry in other.entries:
            self.entries.append(CheckEntry(f'{prefix}.{entry.id}', entry.residual, entry.tolerance, entry.witness))
        for key, value in other.slopes.items():
            self.slopes[f'{prefix}.{key}'] = value
        for key, value in other.extras.items():
            self.extras[f'{prefix}.{key}'] = value
        return self

    def failures(self) -> List[CheckEntry]:
        return [entry for entry in self.entries if not entry.passed]

    def __repr__(self):
        return f'<{type(self).__name__} {self.name}: {len(self.entries)} entries, pass={self.passed}>'

    def entry_dict(self, entry: CheckEntry) -> Dict[str, Any]:
        return entry.to_dict()

    def to_dict(self, include_timing: bool = False):
        """Convert report to dictionary for JSON serialization"""
        data = {
            'name': self.name,
            'pass': self.passed,
            'entries': [self.entry_dict(entry) for entry in self.entries],
            'slopes': {key: _clean(value) for key, value in self.slopes.items()},
            'extras': self.extras
        }
        if include_timing:
            data['wall_time'] = self.wall_time
        return data

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True, indent=2)


class ValidationReport(CheckReport):
    """Axiom-by-axiom result of validating an algebraic structure"""


class CCReport(CheckReport):
    """Worst-case residuals of the categorical connection axioms"""

    def entry_dict(self, entry: CheckEntry) -> Dict[str, Any]:
        return {
            'axiom': entry.id,
            'residual': _clean(entry.residual),
            'tolerance': entry.tolerance,
            'pass': entry.passed,
            'worst_case_input_id': entry.witness
        }


class AxiomReport(CheckReport):
    """Residuals of the gauge transformation axioms"""


class Report(CheckReport):
    """Suite-level report written by the command line"""
