import numpy as np
import pytest

from heffter import Grid
from heffter.io import builtin_fixtures_dir, read_grid, read_set


@pytest.fixture(scope="session")
def ref_h():
    return read_grid(builtin_fixtures_dir() / "reference_H_20_10_9_18.json")


@pytest.fixture(scope="session")
def example_ihs():
    return read_set(builtin_fixtures_dir() / "example_IHS_10_7_2.json")


@pytest.fixture(scope="session")
def reference_parts(ref_h):
    """(folded part, shifted companion) of the transposed published 20 x 10 array, both 10 x 20."""
    a = ref_h.array.T
    folded = Grid(np.where(np.abs(a) <= 100, a, 0))
    companion = Grid(np.where(np.abs(a) > 100, a, 0))
    return folded, companion


@pytest.fixture(autouse=True)
def _no_user_fixtures(monkeypatch):
    monkeypatch.delenv("HEFFTER_FIXTURES", raising=False)


# -- acceptance reporting: one line per criterion ------------------------------

_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        outcome.get_result().criterion = tuple(mark.args)


def pytest_runtest_logreport(report):
    mark = getattr(report, "criterion", None)
    if mark is None:
        return
    n, title = mark
    _, ok = _CRITERIA.get(n, (title, True))
    _CRITERIA[n] = (title, ok and not report.failed and not (report.when == "call" and report.skipped))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, ok = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}")
