import logging

import numpy as np

from cathaul.algebra.catgroup import check_categorical_group
from cathaul.algebra.crossed_module import validate_crossed_module
from cathaul.algebra.groups import FiniteGroup
from cathaul.lie.crossed_modules import validate_algebra_maps
from cathaul.models.report import Report
from cathaul.suites.base import Suite
from cathaul.suites.fixtures import Fixture

logger = logging.getLogger(__name__)


class ValidationSuite(Suite):
    """Crossed-module, categorical-group and Lie-algebra map axioms"""

    name = 'validate'

    def run(self, fixture: Fixture) -> Report:
        config = self.config
        cm = fixture.cm
        rng = np.random.default_rng(config.seed)
        mode = 'exhaustive' if cm.is_finite else 'sampled'
        report = Report(self.name)
        report.extras['crossed_module'] = cm.name

        for label, group in (('G', cm.G), ('H', cm.H)):
            if isinstance(group, FiniteGroup):
                problems = group.validate_axioms()
                report.add(f'group_axioms.{label}', len(problems), 0, problems[0] if problems else None)

        report.merge(validate_crossed_module(cm, mode, samples=config.lie_samples, rng=rng), 'crossed_module')
        samples = min(config.lie_samples, 200)
        report.merge(check_categorical_group(cm, mode, samples=samples, rng=rng), 'categorical_group')
        if fixture.is_lie:
            report.merge(validate_algebra_maps(cm, samples=samples, rng=rng), 'algebra_maps')
        return report
