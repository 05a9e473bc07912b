import pytest
from hypothesis import HealthCheck, settings

from gendiv.cli.curvefile import bundled_curves

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def curves():
    return bundled_curves()


@pytest.fixture(scope="session")
def c345(curves):
    return curves["semigroup-345"]


# one result line per acceptance criterion, printed after the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, title = ACCEPTANCE[n]
        terminalreporter.write_line("criterion %2d  %s  %s" % (n, "PASS" if ok else "FAIL", title))
