import pytest
from hypothesis import HealthCheck, settings

from tambara.examples_io import builtin_bundles, truncated_bundle

settings.register_profile(
    "default", deadline=None, max_examples=25, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def bundles():
    return builtin_bundles()


@pytest.fixture(scope="session")
def z02(bundles):
    return bundles["Z02"]


@pytest.fixture(scope="session")
def z03(bundles):
    return bundles["Z03"]


@pytest.fixture(scope="session")
def z2(bundles):
    return bundles["Z2"]


@pytest.fixture(scope="session")
def kz02(bundles):
    return bundles["kZ02"]


@pytest.fixture(scope="session")
def module_generators(bundles):
    """(bundle name, module name, module, generator) for every declared generator."""
    out = []
    for name, b in bundles.items():
        for mn, gens in b.generators.items():
            for X in gens:
                out.append((name, mn, b.module(mn), X))
    return out


@pytest.fixture(scope="session")
def z03_full():
    return truncated_bundle(3, [0, 1, 2, 3])
