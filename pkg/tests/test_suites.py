import json
import math

import numpy as np
import pytest

from cathaul.exceptions import FixtureError
from cathaul.models.report import Report
from cathaul.suites import SUITES, GaugeSuite, PushforwardSuite, TransportSuite, ValidationSuite
from cathaul.suites.convergence import NOISE_FLOOR, add_slope, fit_slope, self_convergence
from cathaul.suites.fixtures import fixture_from_dict, load_fixture

from conftest import fixture_path


def test_fit_slope_recovers_order():
    grids = [100, 200, 400, 800]
    assert fit_slope(grids, [3.0 * n ** -2.0 for n in grids]) == pytest.approx(2.0)
    assert fit_slope(grids, [0.5 * n ** -4.0 for n in grids]) == pytest.approx(4.0)


def test_fit_slope_ignores_rounding_noise():
    assert math.isnan(fit_slope([100, 200, 400], [1e-15, 1e-16, 0.0]))
    assert math.isnan(fit_slope([100, 200], [1e-3, NOISE_FLOOR / 2]))


def test_self_convergence_gaps():
    values = [np.array([1.0, 0.0]), np.array([1.5, 0.0]), np.array([1.625, 0.0])]
    assert self_convergence(values) == [0.5, 0.125]


def test_add_slope_records_entry_only_when_determined():
    report = Report('r')
    grids = [100, 200, 400]
    assert add_slope(report, 'lift', grids, [n ** -2.0 for n in grids], 2.0, 0.3) == pytest.approx(2.0)
    assert report.entry('slope.lift').passed
    assert add_slope(report, 'flat', grids, [0.0, 0.0, 0.0], 2.0, 0.3) is None
    assert math.isnan(report.slopes['flat'])
    assert [entry.id for entry in report.entries] == ['slope.lift']


def test_add_slope_flags_wrong_order():
    report = Report('r')
    grids = [100, 200, 400]
    add_slope(report, 'lift', grids, [n ** -1.0 for n in grids], 2.0, 0.3)
    assert not report.entry('slope.lift').passed


def test_load_fixture_errors(tmp_path):
    with pytest.raises(FixtureError):
        load_fixture(tmp_path / 'missing.json')
    broken = tmp_path / 'broken.json'
    broken.write_text('{"name": ')
    with pytest.raises(FixtureError):
        load_fixture(broken)
    listing = tmp_path / 'list.json'
    listing.write_text('[1, 2]')
    with pytest.raises(FixtureError):
        load_fixture(listing)


def test_fixture_descriptor_errors():
    with pytest.raises(FixtureError):
        fixture_from_dict({'crossed_module': {'builtin': 'e8'}})
    with pytest.raises(FixtureError):
        fixture_from_dict({'crossed_module': {'flavor': 'unknown'}})
    data = json.loads(open(fixture_path('s3_a3')).read())
    data['base'] = {'lower': [-1, -1], 'upper': [1, 1]}
    with pytest.raises(FixtureError):
        fixture_from_dict(data)


def test_finite_fixture_has_no_bundle():
    fixture = load_fixture(fixture_path('s3_a3'))
    assert not fixture.is_lie
    with pytest.raises(FixtureError):
        fixture.reference_path(100)


def test_suite_registry():
    assert set(SUITES) == {'validate', 'transport', 'pushforward', 'gauge'}
    assert SUITES['gauge'] is GaugeSuite


def test_validation_suite_accepts_crossed_module(small_config):
    suite = ValidationSuite(small_config('s3_a3'))
    report = suite.execute(load_fixture(suite.config.fixture))
    assert report.passed, report.failures()
    assert report.entry('group_axioms.G').residual == 0
    assert report.extras['fixture'] == 's3_a3'
    assert suite.path is None


def test_validation_suite_rejects_trivial_action(small_config):
    suite = ValidationSuite(small_config('s3_trivial_action'))
    report = suite.execute(load_fixture(suite.config.fixture))
    assert not report.passed
    assert not report.entry('crossed_module.peiffer_1').passed
    assert report.entry('crossed_module.peiffer_2').passed


def test_validation_suite_checks_lie_algebra_maps(small_config):
    suite = ValidationSuite(small_config('su2_testbed'))
    report = suite.execute(load_fixture(suite.config.fixture))
    assert report.passed, report.failures()
    assert any(entry.id.startswith('algebra_maps.') for entry in report.entries)


def test_transport_suite_on_flat_connection(small_config):
    suite = TransportSuite(small_config('su2_flat'))
    report = suite.execute(load_fixture(suite.config.fixture))
    for id in ('connection.vertical_normalization', 'connection.equivariance', 'holonomy.small_loop',
               'cc.standard(A).CC1', 'cc.standard(A).CC2', 'cc.lift_dec(A).CC3'):
        assert report.entry(id).passed, report.entry(id)
    assert suite.path is not None
    assert suite.path.n_steps == 400


def test_transport_suite_needs_a_bundle(small_config):
    suite = TransportSuite(small_config('s3_a3'))
    with pytest.raises(FixtureError):
        suite.execute(load_fixture(suite.config.fixture))


def test_pushforward_suite_on_testbed(small_config):
    suite = PushforwardSuite(small_config('su2_testbed'))
    report = suite.execute(load_fixture(suite.config.fixture))
    for id in ('specialization', 'well_definedness', 'round_trip', 'functor_Sdec.composition'):
        assert report.entry(id).passed, report.entry(id)


def test_gauge_suite_with_identity_transform(small_config):
    suite = GaugeSuite(small_config('identity_gauge', n_steps=800))
    report = suite.execute(load_fixture(suite.config.fixture))
    assert report.passed, report.failures()
    assert report.residual('gengauge.endpoint') < 1e-12
    assert report.extras['gengauge.horizontality_defect'] < 1e-12
    assert report.entry('slope.gengauge.horizontality').passed
    assert report.entry('identity_transform').passed
    assert report.entry('composition.coefficients').passed
    assert not any(entry.id.startswith('negative_control') for entry in report.entries)
    assert suite.path is not None


def test_transport_suite_on_testbed(small_config):
    suite = TransportSuite(small_config('su2_testbed', n_steps=800))
    report = suite.execute(load_fixture(suite.config.fixture))
    assert report.passed, report.failures()
    assert any(entry.id.startswith('slope.') for entry in report.entries)
    assert suite.path.n_steps == 800


def test_gauge_suite_on_testbed(small_config):
    suite = GaugeSuite(small_config('su2_testbed', n_steps=800))
    report = suite.execute(load_fixture(suite.config.fixture))
    assert report.passed, report.failures()
    ids = [entry.id for entry in report.entries]
    assert 'slope.gengauge.horizontality' in ids
    assert 'negative_control.theta_equivariance_gap' in ids
    assert 'induced_pushforward.closed_form' in ids
    assert any(id.startswith('gengauge_classical.') for id in ids)
    assert any(id.startswith('gengauge_shift.') for id in ids)
    assert report.entry('axioms.functorial.composition').passed
    assert report.entry('axioms.functorial.target_preservation').passed


def test_gauge_suite_skips_functorial_axioms_for_functorial_fixture(small_config):
    suite = GaugeSuite(small_config('so3_cover', n_steps=800))
    report = suite.execute(load_fixture(suite.config.fixture))
    assert report.entry('axioms.composition').tolerance == suite.config.ode_tol
    assert not any(entry.id.startswith('axioms.functorial.') for entry in report.entries)
