import logging
import time
from typing import Optional

import numpy as np

from cathaul.bundle.connection import BundlePath
from cathaul.catbundle.checks import Battery, standard_battery
from cathaul.exceptions import CathaulError
from cathaul.models.report import Report
from cathaul.models.run_config import RunConfig
from cathaul.suites.fixtures import Fixture

logger = logging.getLogger(__name__)


class Suite:
    """Service running one family of checks against a fixture

    Subclasses implement `run`; `path` holds the bundle path of the last run
    worth plotting, if the suite produces one.
    """

    name = 'suite'

    def __init__(self, config: RunConfig):
        self.config = config
        self.path: Optional[BundlePath] = None

    def __repr__(self):
        return f'<{type(self).__name__} {self.config!r}>'

    def run(self, fixture: Fixture) -> Report:
        raise NotImplementedError

    def execute(self, fixture: Fixture) -> Report:
        """Run the suite, timing it and logging the outcome"""
        logger.info(f"Starting {self.name} suite on fixture {fixture.name}")
        start = time.perf_counter()
        try:
            report = self.run(fixture)
        except CathaulError as e:
            logger.error(f"Suite {self.name} failed on {fixture.name}: {str(e)}")
            raise
        report.wall_time = time.perf_counter() - start
        report.extras['fixture'] = fixture.name
        report.extras['config'] = self.config.to_dict()
        failures = report.failures()
        if failures:
            logger.warning(f"Suite {self.name}: {len(failures)} of {len(report.entries)} checks failed")
        logger.info(f"Finished {self.name} suite in {report.wall_time:.2f}s, pass={report.passed}")
        return report

    def battery(self, fixture: Fixture, n_steps: Optional[int] = None) -> Battery:
        fixture.require_bundle()
        config = self.config
        return standard_battery(fixture.bundle, n_steps or config.n_steps, seed=config.seed,
                                lines=config.battery_lines, arcs=config.battery_arcs,
                                l_composites=config.battery_l_composites)

    def start_point(self, fixture: Fixture, n_steps: int):
        """Reference path at n_steps and a seeded fiber point over its start"""
        path = fixture.reference_path(n_steps)
        rng = np.random.default_rng(self.config.seed)
        g = fixture.bundle.group.sample(rng, 1)[0]
        return path, fixture.bundle.point(path.start, g)
