import numpy as np
import pytest

from cptgames import fixtures


@pytest.fixture(scope="session")
def ex4():
    return fixtures.example4_game()


@pytest.fixture(scope="session")
def alice():
    return fixtures.alice_game()


@pytest.fixture(scope="session")
def region():
    cache = {}

    def get(label):
        if label not in cache:
            cache[label] = (fixtures.region_game(label), fixtures.region_profile(label))
        return cache[label]
    return get


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
