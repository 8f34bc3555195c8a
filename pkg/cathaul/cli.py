import logging
import os
import sys

import click

from cathaul import create_runner
from cathaul.exceptions import CathaulError, ConfigError, FixtureError
from cathaul.suites.fixtures import load_fixture

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_FIXTURE = 3
EXIT_SUITE = 4


def suite_options(command):
    """Options shared by every suite command"""
    options = [
        click.option('--fixture', type=click.Path(dir_okay=False), help='Fixture JSON file'),
        click.option('--n-steps', type=int, default=None, help='Finest grid size N'),
        click.option('--refine', type=int, default=None, help='Refinement levels N, N/2, ...'),
        click.option('--tol', type=float, default=None, help='Override the tolerance of the ODE checks'),
        click.option('--seed', type=int, default=None, help='Random seed (default 42)'),
        click.option('--out', type=click.Path(file_okay=False), default=None, help='Report directory'),
        click.option('--order', type=click.Choice(['2', '4']), default=None, help='Integrator order'),
        click.option('--timings', is_flag=True, default=False, help='Include wall time in the report'),
    ]
    for option in reversed(options):
        command = option(command)
    return command


@click.group()
@click.option('--env', 'config_name', type=click.Choice(['development', 'acceptance', 'default']), default=None,
              help='Configuration profile (default: $CATHAUL_ENV or "default")')
@click.pass_context
def cli(ctx, config_name):
    """Numerical checks for crossed modules, categorical connections and gauge transformations"""
    ctx.obj = {'config_name': config_name}


def run_suite(ctx, suite_name, fixture, order, timings, **overrides):
    """Build, run and write one suite; exits with the result code"""
    try:
        runner = create_runner(suite_name, fixture, ctx.obj['config_name'],
                               order=int(order) if order else None, timings=timings, **overrides)
        report = runner.execute(load_fixture(runner.config.fixture))
    except ConfigError as e:
        logger.error(f"Configuration error: {str(e)}")
        click.echo(f"❌ Configuration error: {e}", err=True)
        sys.exit(EXIT_CONFIG)
    except FixtureError as e:
        logger.error(f"Fixture error: {str(e)}")
        click.echo(f"❌ Fixture error: {e}", err=True)
        sys.exit(EXIT_FIXTURE)
    except CathaulError as e:
        click.echo(f"❌ Suite {suite_name} aborted: {e}", err=True)
        sys.exit(EXIT_SUITE)

    config = runner.config
    os.makedirs(config.out, exist_ok=True)
    report_path = config.output_path(suite_name, 'report')
    with open(report_path, 'w') as f:
        f.write(report.to_json(include_timing=config.timings))
    logger.info(f"Report written to {report_path}")
    if runner.path is not None:
        csv_path = config.output_path(suite_name, 'path')
        runner.path.write_csv(csv_path)
        logger.info(f"Path data written to {csv_path}")

    failures = report.failures()
    for entry in failures:
        click.echo(f"  ✗ {entry}")
    if failures:
        click.echo(f"❌ {suite_name}: {len(failures)} of {len(report.entries)} checks failed ({report_path})")
        sys.exit(EXIT_CHECK_FAILED)
    click.echo(f"✅ {suite_name}: all {len(report.entries)} checks passed ({report_path})")
    sys.exit(EXIT_PASS)


@cli.command()
@suite_options
@click.pass_context
def validate(ctx, **options):
    """Crossed-module, categorical-group and algebra-map axioms"""
    run_suite(ctx, 'validate', **options)


@cli.command()
@suite_options
@click.pass_context
def transport(ctx, **options):
    """Horizontal lifts, shifted transport and categorical connection batteries"""
    run_suite(ctx, 'transport', **options)


@cli.command()
@suite_options
@click.pass_context
def pushforward(ctx, **options):
    """Pushforward round trips, well-definedness and functoriality of 𝕊"""
    run_suite(ctx, 'pushforward', **options)


@cli.command()
@suite_options
@click.pass_context
def gauge(ctx, **options):
    """Gauge axioms, transformed lifts and the induced pushforward"""
    run_suite(ctx, 'gauge', **options)
