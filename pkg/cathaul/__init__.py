import os

from config.config import config

__version__ = '0.1.0'


def create_runner(suite_name, fixture=None, config_name=None, **overrides):
    """Suite factory: configuration class plus command-line overrides"""
    from cathaul.models.run_config import RunConfig
    from cathaul.suites import SUITES

    if config_name is None:
        config_name = os.environ.get('CATHAUL_ENV', 'default')
    settings = config[config_name]

    run_config = RunConfig.from_options(settings, fixture, **overrides)
    return SUITES[suite_name](run_config)
