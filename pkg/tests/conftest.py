import pytest
from hypothesis import HealthCheck, settings

from cdvcert import cdvcore, groups, maps
from cdvcert.exactfield import QuadScalar

settings.register_profile(
    "exact",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")

# Pass/fail lines from the acceptance suite; printed after the run so they
# survive pytest's output capture.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def g10_table():
    presentation = groups.gamma10()
    return presentation, groups.coset_enumerate(presentation)


@pytest.fixture(scope="session")
def g10_map(g10_table):
    presentation, table = g10_table
    return maps.genus10_map(presentation, table)


@pytest.fixture(scope="session")
def g10_operator(g10_map):
    operator = cdvcore.build_shift_operator(g10_map.graph, 1 + QuadScalar.root(7))
    cdvcore.check_membership(operator)
    return operator
