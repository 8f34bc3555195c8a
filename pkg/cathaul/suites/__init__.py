from cathaul.suites.base import Suite
from cathaul.suites.fixtures import Fixture, fixture_from_dict, load_fixture
from cathaul.suites.gauge import GaugeSuite
from cathaul.suites.pushforward import PushforwardSuite
from cathaul.suites.transport import TransportSuite
from cathaul.suites.validation import ValidationSuite

SUITES = {suite.name: suite for suite in (ValidationSuite, TransportSuite, PushforwardSuite, GaugeSuite)}

__all__ = ['Suite', 'ValidationSuite', 'TransportSuite', 'PushforwardSuite', 'GaugeSuite', 'SUITES',
           'Fixture', 'fixture_from_dict', 'load_fixture']
