import logging
from typing import Optional, Sequence

import numpy as np

from cathaul.models.report import CheckReport

logger = logging.getLogger(__name__)

# residuals below this are rounding noise and carry no slope
NOISE_FLOOR = 1e-12


def fit_slope(n_steps: Sequence[int], residuals: Sequence[float]) -> float:
    """Order p of residual ~ C·N^-p by least squares in log-log; NaN if undetermined"""
    n = np.asarray(n_steps, dtype=float)
    r = np.asarray(residuals, dtype=float)
    keep = np.isfinite(r) & (r > NOISE_FLOOR)
    if keep.sum() < 2:
        return float('nan')
    slope, _ = np.polyfit(np.log(n[keep]), np.log(r[keep]), 1)
    return float(-slope)


def self_convergence(values: Sequence[np.ndarray]) -> list:
    """‖v_N - v_2N‖ between successive refinements"""
    return [float(np.linalg.norm(np.asarray(coarse) - np.asarray(fine)))
            for coarse, fine in zip(values[:-1], values[1:])]


def add_slope(report: CheckReport, key: str, n_steps: Sequence[int], residuals: Sequence[float],
              target: float, window: float, require: bool = True) -> Optional[float]:
    """Record the fitted slope; add a `slope.<key>` entry |slope - target| ≤ window when it is determined"""
    slope = fit_slope(n_steps, residuals)
    report.slopes[key] = slope
    report.extras[f'{key}.residuals'] = [float(r) for r in residuals]
    if np.isnan(slope):
        logger.info(f"Residuals of {key} are at rounding level; no slope fitted")
        return None
    if require:
        report.add(f'slope.{key}', abs(slope - target), window, witness=f'slope={slope:.3f}')
    return slope
