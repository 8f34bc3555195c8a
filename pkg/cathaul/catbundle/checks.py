import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, List, Optional, Tuple

import numpy as np

from cathaul.algebra.crossed_module import _Worst
from cathaul.bundle.connection import BundlePoint, TrivialBundle
from cathaul.catbundle.connections import CatConnection
from cathaul.models.report import CCReport
from cathaul.paths.families import arc, line
from cathaul.paths.sampled_path import SampledPath, path_compose, point_path

logger = logging.getLogger(__name__)


@dataclass
class Battery:
    """Test paths with fiber points, group elements and composable path pairs"""
    paths: List[Tuple[str, SampledPath]] = field(default_factory=list)
    points: List[BundlePoint] = field(default_factory=list)
    elements: List[Any] = field(default_factory=list)
    pairs: List[Tuple[str, SampledPath, SampledPath]] = field(default_factory=list)

    def __repr__(self):
        return f'<Battery {len(self.paths)} paths, {len(self.pairs)} pairs>'

    def __len__(self):
        return len(self.paths)

    def items(self):
        """(id, γ, p, g) with p over the start of γ"""
        for (path_id, gamma), p, g in zip(self.paths, self.points, self.elements):
            yield path_id, gamma, BundlePoint(gamma.start, p.g), g


def standard_battery(bundle: TrivialBundle, n_steps: int, seed: int = 42, lines: int = 8, arcs: int = 6,
                     l_composites: int = 6) -> Battery:
    """Lines, arcs and L-shaped composites inside the base box, with fiber data

    Every leg has duration 1 and n_steps steps, so all grids match.
    """
    rng = np.random.default_rng(seed)
    lower, upper = bundle.lower, bundle.upper
    span = upper - lower
    inner_lower, inner_upper = lower + 0.1 * span, upper - 0.1 * span
    d = bundle.base_dim
    battery = Battery()

    for i in range(lines):
        start, end = rng.uniform(inner_lower, inner_upper, size=(2, d))
        battery.paths.append((f'line[{i}]', line(start, end, n_steps)))

    for i in range(arcs):
        if d < 2:
            start, end = rng.uniform(inner_lower, inner_upper, size=(2, d))
            battery.paths.append((f'line[{lines + i}]', line(start, end, n_steps)))
            continue
        radius = float(rng.uniform(0.1, 0.3) * span[:2].min())
        center = rng.uniform(inner_lower, inner_upper)
        center[:2] = np.clip(center[:2], inner_lower[:2] + radius, inner_upper[:2] - radius)
        angle0 = float(rng.uniform(0, 2 * np.pi))
        angle1 = angle0 + float(rng.uniform(np.pi / 2, 3 * np.pi / 2))
        battery.paths.append((f'arc[{i}]', arc(center, radius, angle0, angle1, n_steps)))

    for i in range(l_composites):
        a = rng.uniform(inner_lower, inner_upper)
        b = a.copy()
        b[0] = rng.uniform(inner_lower[0], inner_upper[0])
        c = b.copy()
        c[min(1, d - 1)] = rng.uniform(inner_lower[min(1, d - 1)], inner_upper[min(1, d - 1)])
        first, second = line(a, b, n_steps), line(b, c, n_steps)
        battery.paths.append((f'L[{i}]', path_compose(second, first)))
        battery.pairs.append((f'L[{i}]', first, second))

    count = len(battery.paths)
    battery.points = bundle.sample_points(rng, count)
    battery.elements = bundle.group.sample(rng, count)
    logger.info(f"Built battery of {count} paths and {len(battery.pairs)} composable pairs at N={n_steps}")
    return battery


def _cc1(conn: CatConnection, path_id: str, gamma: SampledPath, p: BundlePoint) -> Tuple[float, str]:
    space = conn.space
    worst, witness = 0.0, path_id
    for duration in (0.0, gamma.duration):
        point = point_path(p.x, duration, gamma.n_steps if duration else None)
        residual = space.distance(conn.lift(point, p), space.identity(p, point))
        if residual > worst or np.isnan(residual):
            worst, witness = residual, f'{path_id}:point(duration={duration:g})'
    return worst, witness


def _cc2(conn: CatConnection, gamma: SampledPath, p: BundlePoint, g) -> float:
    space = conn.space
    return space.distance(conn.lift(gamma, p.act(g)), space.act_identity(conn.lift(gamma, p), g))


def _cc3(conn: CatConnection, first: SampledPath, second: SampledPath, p: BundlePoint) -> float:
    space = conn.space
    head = conn.lift(first, p)
    tail = conn.lift(second, space.target(head))
    return space.distance(conn.lift(path_compose(second, first), p), space.compose(tail, head))


def check_CC(conn: CatConnection, battery: Battery, cc1_tol: float = 1e-10, cc2_tol: float = 1e-10,
             cc3_tol: float = 1e-6, threads: int = 1, name: Optional[str] = None) -> CCReport:
    """Worst-case residuals of CC1 (identities), CC2 (equivariance under 1_g) and CC3 (composition)"""
    if len(battery) == 0:
        raise ValueError("check_CC needs a nonempty battery")
    items = list(battery.items())
    pair_points = [BundlePoint(first.start, p.g) for (_, first, _), p in zip(battery.pairs, battery.points)]
    logger.info(f"Checking CC1-CC3 for {conn.name} on {len(items)} paths")

    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        cc1_jobs = [executor.submit(_cc1, conn, path_id, gamma, p) for path_id, gamma, p, _ in items]
        cc2_jobs = [executor.submit(_cc2, conn, gamma, p, g) for _, gamma, p, g in items]
        cc3_jobs = [executor.submit(_cc3, conn, first, second, p)
                    for (_, first, second), p in zip(battery.pairs, pair_points)]
        cc1 = [job.result() for job in cc1_jobs]
        cc2 = [job.result() for job in cc2_jobs]
        cc3 = [job.result() for job in cc3_jobs]

    worst1, worst2, worst3 = _Worst(cc1_tol), _Worst(cc2_tol), _Worst(cc3_tol)
    for (value, witness) in cc1:
        worst1.update(value, lambda: witness)
    for (path_id, _, _, _), value in zip(items, cc2):
        worst2.update(value, lambda: path_id)
    for (pair_id, _, _), value in zip(battery.pairs, cc3):
        worst3.update(value, lambda: pair_id)

    report = CCReport(name or f'cc:{conn.name}')
    for axiom, worst, values in (('CC1', worst1, [v for v, _ in cc1]), ('CC2', worst2, cc2), ('CC3', worst3, cc3)):
        entry = report.add(axiom, worst.value, worst.tolerance, worst.witness)
        if worst.witness is None and values:
            entry.witness = _argmax_witness(axiom, values, items, battery)
    report.extras['flavor'] = conn.flavor
    report.extras['paths'] = len(items)
    report.extras['pairs'] = len(battery.pairs)
    return report


def _argmax_witness(axiom: str, values: List[float], items, battery: Battery) -> str:
    index = int(np.nanargmax(values)) if not np.all(np.isnan(values)) else 0
    if axiom == 'CC3':
        return battery.pairs[index][0]
    return items[index][0]
