import pytest
from hypothesis import HealthCheck, settings

from nilcoh.catalog import build, builders, load_catalog
from nilcoh.linalg import GF, QQ

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CATALOG_NAMES = sorted(builders())

# results of the acceptance criteria, printed at the end of the run
CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def catalog_by_name(catalog):
    return {g.name: g for g in catalog}


@pytest.fixture(params=[QQ, GF(5), GF(7)], ids=["QQ", "GF5", "GF7"])
def field(request):
    return request.param


def algebra(name, F=QQ):
    return build(name, F)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, title = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {title}")
