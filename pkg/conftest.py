import os
import sys

import pytest

sys.path.append(os.path.dirname(__file__))


def pytest_addoption(parser):
    parser.addoption('--long', action='store_true', default=False,
                     help='Run the multi-parameter section searches (hours).')


def pytest_configure(config):
    config.addinivalue_line('markers', 'long: multi-hour runs, skipped unless --long or TOTALREAL_LONG=1')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--long') or os.environ.get('TOTALREAL_LONG') == '1':
        return
    skip = pytest.mark.skip(reason='long run: use --long or TOTALREAL_LONG=1')
    for item in items:
        if 'long' in item.keywords:
            item.add_marker(skip)


@pytest.fixture(autouse=True)
def single_worker(monkeypatch):
    monkeypatch.setenv('TOTALREAL_JOBS', '1')


@pytest.fixture
def inputs():
    from pathlib import Path
    return Path(__file__).parent / 'inputs'
