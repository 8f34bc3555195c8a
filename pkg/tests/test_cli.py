import json

from click.testing import CliRunner

from cathaul.cli import EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_FIXTURE, EXIT_PASS, cli

from conftest import fixture_path


def invoke(*args):
    return CliRunner().invoke(cli, list(args))


def test_validate_passes_and_writes_report(tmp_path):
    result = invoke('validate', '--fixture', fixture_path('s3_a3'), '--out', str(tmp_path))
    assert result.exit_code == EXIT_PASS, result.output
    assert '✅ validate' in result.output
    report = json.loads((tmp_path / 'validate_report.json').read_text())
    assert report['pass'] is True
    assert 'wall_time' not in report
    assert report['extras']['config']['fixture'] == 's3_a3.json'
    assert not (tmp_path / 'validate_path.csv').exists()


def test_timings_flag_adds_wall_time(tmp_path):
    result = invoke('validate', '--fixture', fixture_path('s3_a3'), '--out', str(tmp_path), '--timings')
    assert result.exit_code == EXIT_PASS, result.output
    report = json.loads((tmp_path / 'validate_report.json').read_text())
    assert report['wall_time'] >= 0


def test_reports_are_deterministic(tmp_path):
    first, second = tmp_path / 'a', tmp_path / 'b'
    for out in (first, second):
        assert invoke('validate', '--fixture', fixture_path('d4_inner'), '--out', str(out)).exit_code == EXIT_PASS
    assert (first / 'validate_report.json').read_text() == (second / 'validate_report.json').read_text()


def test_failed_check_exits_one(tmp_path):
    result = invoke('validate', '--fixture', fixture_path('s3_trivial_action'), '--out', str(tmp_path))
    assert result.exit_code == EXIT_CHECK_FAILED
    assert '✗' in result.output and 'peiffer_1' in result.output
    assert (tmp_path / 'validate_report.json').exists()


def test_missing_fixture_is_a_config_error(tmp_path):
    assert invoke('validate', '--out', str(tmp_path)).exit_code == EXIT_CONFIG


def test_small_grid_is_a_config_error(tmp_path):
    result = invoke('transport', '--fixture', fixture_path('su2_flat'), '--n-steps', '4', '--out', str(tmp_path))
    assert result.exit_code == EXIT_CONFIG


def test_unreadable_fixture_exits_three(tmp_path):
    result = invoke('validate', '--fixture', str(tmp_path / 'nowhere.json'), '--out', str(tmp_path))
    assert result.exit_code == EXIT_FIXTURE


def test_bundle_suite_on_finite_fixture_exits_three(tmp_path):
    result = invoke('gauge', '--fixture', fixture_path('s3_a3'), '--out', str(tmp_path))
    assert result.exit_code == EXIT_FIXTURE


def test_unknown_order_is_rejected(tmp_path):
    result = invoke('transport', '--fixture', fixture_path('su2_flat'), '--order', '3', '--out', str(tmp_path))
    assert result.exit_code == 2
    assert not (tmp_path / 'transport_report.json').exists()


def test_gauge_writes_path_csv(tmp_path):
    result = invoke('--env', 'development', 'gauge', '--fixture', fixture_path('identity_gauge'),
                    '--n-steps', '800', '--refine', '3', '--tol', '1e-3', '--out', str(tmp_path))
    assert result.exit_code == EXIT_PASS, result.output
    lines = (tmp_path / 'gauge_path.csv').read_text().splitlines()
    assert lines[0].startswith('t,x1,x2')
    assert len(lines) == 802
