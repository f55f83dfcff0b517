"""
Gemeinsame Fixtures
Log-Dateien landen in einem temporären Verzeichnis; `slow` nur mit --runslow
"""
import pytest

from awn.config import Config
from awn.services.morphisms import Comparator


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="auch langsame Tests ausführen")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="braucht --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def log_dir(tmp_path, monkeypatch):
    monkeypatch.setenv('AW_LOG_DIR', str(tmp_path / 'logs'))
    for name in ('AW_N', 'AW_SPINS', 'AW_EVAL_Q', 'AW_CACHE', 'AW_GENERALIZED'):
        monkeypatch.delenv(name, raising=False)
    return tmp_path / 'logs'


@pytest.fixture(scope='session')
def rules3():
    from awn.services.rewriter import complete, seed_rules
    return complete(seed_rules(3), degree_bound=4, max_iter=10)


@pytest.fixture(scope='session')
def comparator3(rules3):
    return Comparator(rules={3: rules3})


@pytest.fixture
def rep_comparator():
    """Nur Darstellungstests, keine Regeln"""
    return Comparator()


@pytest.fixture
def config():
    return Config()
