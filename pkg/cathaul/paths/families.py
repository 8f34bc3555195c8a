import logging
from functools import reduce
from typing import Any, Dict, Sequence

import numpy as np

from cathaul.exceptions import FixtureError
from cathaul.paths.sampled_path import SampledPath, path_compose, sample_function

logger = logging.getLogger(__name__)


def line(start, end, n_steps: int, duration: float = 1.0, t0: float = 0.0) -> SampledPath:
    """Straight segment start → end"""
    start = np.asarray(start, dtype=float)
    end = np.asarray(end, dtype=float)
    return sample_function(lambda s: start + np.outer(s, end - start), n_steps, duration, t0)


def arc(center, radius: float, angle0: float, angle1: float, n_steps: int, duration: float = 1.0,
        t0: float = 0.0, axes=(0, 1)) -> SampledPath:
    """Circular arc in the plane of two coordinate axes, from angle0 to angle1"""
    center = np.asarray(center, dtype=float)
    i, j = axes

    def f(s):
        angle = angle0 + s * (angle1 - angle0)
        points = np.repeat(center[None, :], len(s), axis=0)
        points[:, i] += radius * np.cos(angle)
        points[:, j] += radius * np.sin(angle)
        return points

    return sample_function(f, n_steps, duration, t0)


def waypoints(points: Sequence, n_steps: int, duration: float = 1.0) -> SampledPath:
    """Polyline through the points; each leg is a sitting segment of equal duration and steps"""
    points = [np.asarray(p, dtype=float) for p in points]
    if len(points) < 2:
        raise ValueError("waypoints needs at least two points")
    legs = len(points) - 1
    leg_steps = max(4, n_steps // legs)
    segments = [line(a, b, leg_steps, duration / legs) for a, b in zip(points[:-1], points[1:])]
    return reduce(lambda first, second: path_compose(second, first), segments)


def square_loop(corner, side: float, n_steps: int, duration: float = 1.0, axes=(0, 1)) -> SampledPath:
    """Counter-clockwise square starting and ending at `corner`"""
    corner = np.asarray(corner, dtype=float)
    i, j = axes
    e1 = np.zeros_like(corner)
    e2 = np.zeros_like(corner)
    e1[i] = side
    e2[j] = side
    return waypoints([corner, corner + e1, corner + e1 + e2, corner + e2, corner], n_steps, duration)


def path_from_descriptor(descriptor: Dict[str, Any], n_steps: int) -> SampledPath:
    """Path from a JSON descriptor: {"family": "line" | "arc" | "waypoints" | "square", ...}"""
    family = descriptor.get('family')
    duration = float(descriptor.get('duration', 1.0))
    try:
        if family == 'line':
            return line(descriptor['start'], descriptor['end'], n_steps, duration)
        if family == 'arc':
            return arc(descriptor['center'], float(descriptor['radius']), float(descriptor['angle0']),
                       float(descriptor['angle1']), n_steps, duration)
        if family == 'waypoints':
            return waypoints(descriptor['points'], n_steps, duration)
        if family == 'square':
            return square_loop(descriptor['corner'], float(descriptor['side']), n_steps, duration)
    except KeyError as e:
        raise FixtureError(f"Path descriptor {family!r} is missing {str(e)}")
    raise FixtureError(f"Unknown path family {family!r}")
