import os
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

from cathaul.exceptions import ConfigError


@dataclass
class RunConfig:
    """Parameters of one suite run: configuration defaults plus command-line overrides"""
    fixture: str
    n_steps: int = 2000
    refine: int = 3
    seed: int = 42
    out: str = 'reports'
    order: int = 2
    threads: int = 1
    tol: Optional[float] = None
    timings: bool = False

    join_tol: float = 1e-9
    algebraic_tol: float = 1e-10
    ode_tol: float = 1e-6
    gauge_tol: float = 1e-5
    horizontal_tol: float = 1e-3
    slope_target: float = 2.0
    slope_window: float = 0.3
    lie_samples: int = 1000
    battery_lines: int = 8
    battery_arcs: int = 6
    battery_l_composites: int = 6

    def __post_init__(self):
        self.validate()

    def __repr__(self):
        return f'<RunConfig {self.fixture} N={self.n_steps} refine={self.refine} seed={self.seed}>'

    def validate(self):
        if not self.fixture:
            raise ConfigError("A fixture file is required")
        if self.n_steps < 8:
            raise ConfigError(f"Grid size must be at least 8, got {self.n_steps}")
        if self.refine < 2:
            raise ConfigError(f"Slope estimation needs at least 2 refinement levels, got {self.refine}")
        if self.threads < 1:
            raise ConfigError(f"Thread count must be positive, got {self.threads}")
        if self.order not in (2, 4):
            raise ConfigError(f"Integrator order must be 2 or 4, got {self.order}")
        if self.tol is not None and not self.tol > 0:
            raise ConfigError(f"Tolerance override must be positive, got {self.tol}")
        if self.n_steps >> (self.refine - 1) < 8:
            raise ConfigError(f"Refining {self.refine} levels below N={self.n_steps} drops under 8 steps")

    @classmethod
    def from_options(cls, settings, fixture: Optional[str], **overrides) -> 'RunConfig':
        """Build from a Config class and command-line options; None means "use the default" """
        values = {
            'n_steps': settings.N_STEPS,
            'refine': settings.REFINE_LEVELS,
            'seed': settings.SEED,
            'out': settings.OUTPUT_DIR,
            'order': settings.INTEGRATOR_ORDER,
            'threads': settings.THREADS,
            'join_tol': settings.JOIN_TOL,
            'algebraic_tol': settings.ALGEBRAIC_TOL,
            'ode_tol': settings.ODE_TOL,
            'gauge_tol': settings.GAUGE_TOL,
            'horizontal_tol': settings.HORIZONTAL_TOL,
            'slope_target': settings.SLOPE_TARGET,
            'slope_window': settings.SLOPE_WINDOW,
            'lie_samples': settings.LIE_SAMPLES,
            'battery_lines': settings.BATTERY_LINES,
            'battery_arcs': settings.BATTERY_ARCS,
            'battery_l_composites': settings.BATTERY_L_COMPOSITES,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        try:
            return cls(fixture=fixture or '', **values)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Invalid run configuration: {str(e)}")

    def tolerance(self, default: float) -> float:
        """The --tol override when given, else the default"""
        return self.tol if self.tol is not None else default

    def grids(self):
        """Refinement grids N/2^(refine-1), ..., N/2, N"""
        return [self.n_steps >> k for k in reversed(range(self.refine))]

    def output_path(self, suite: str, kind: str) -> str:
        extension = 'json' if kind == 'report' else 'csv'
        return os.path.join(self.out, f'{suite}_{kind}.{extension}')

    def to_dict(self) -> Dict[str, Any]:
        """Convert run configuration to dictionary for JSON serialization"""
        data = asdict(self)
        data['fixture'] = os.path.basename(self.fixture)
        data.pop('out')
        data.pop('threads')
        return data
