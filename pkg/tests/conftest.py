from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from izeta.graph_model import from_json

DATA = Path(__file__).parent / "data"

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CHAIN = "x^3*y, x^6+y^4"
TWO_IMAGES = "x^4, x*y^2, y^3"
BRANCHED = "x^3*y, x^3-y^2"
CUSP = "y^2-x^3"

_criteria: dict[int, tuple[str, str]] = {}


def load_graph(name: str):
    return from_json((DATA / f"{name}.graph.json").read_text())


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _criteria[number] = ("PASS" if rep.passed else "FAIL", title)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status, title = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")
