import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

from cathaul.algebra.crossed_module import normal_subgroup_module  # noqa: E402
from cathaul.algebra.groups import symmetric_group  # noqa: E402
from cathaul.catbundle.checks import standard_battery  # noqa: E402
from cathaul.lie.crossed_modules import so3_cover_module, su2_adjoint_module  # noqa: E402
from cathaul.models.run_config import RunConfig  # noqa: E402
from cathaul.suites.fixtures import load_fixture  # noqa: E402

FIXTURES = ROOT / 'fixtures'


def fixture_path(name: str) -> str:
    return str(FIXTURES / f'{name}.json')


@pytest.fixture
def s3():
    return symmetric_group(3)


@pytest.fixture
def s3_a3(s3):
    return normal_subgroup_module(s3, [s3.element(label) for label in ('e', '(123)', '(132)')])


@pytest.fixture
def su2_module():
    return su2_adjoint_module()


@pytest.fixture
def cover_module():
    return so3_cover_module()


@pytest.fixture
def testbed():
    return load_fixture(fixture_path('su2_testbed'))


@pytest.fixture
def cover_fixture():
    return load_fixture(fixture_path('so3_cover'))


@pytest.fixture
def identity_fixture():
    return load_fixture(fixture_path('identity_gauge'))


@pytest.fixture
def flat_fixture():
    return load_fixture(fixture_path('su2_flat'))


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def small_battery(testbed):
    return standard_battery(testbed.bundle, 200, seed=3, lines=2, arcs=2, l_composites=2)


@pytest.fixture
def small_config(tmp_path):
    """Coarse grids and few samples; tolerances loose enough for N=400"""
    def build(name: str, **overrides):
        values = dict(n_steps=400, refine=3, lie_samples=40, battery_lines=2, battery_arcs=2,
                      battery_l_composites=2, ode_tol=1e-4, gauge_tol=1e-3, out=str(tmp_path))
        values.update(overrides)
        return RunConfig(fixture=fixture_path(name), **values)
    return build

