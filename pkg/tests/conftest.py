import pytest

from ssk3.charspace import min_working_degree, search_subspace, special_subspace
from ssk3.discform import build_disc_space
from ssk3.strata import ZeroPattern

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion reported in the summary")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = getattr(report, "_criterion", None)
    if marker is not None:
        n, text = marker
        prev = _criteria.get(n, (text, "PASS"))[1]
        status = "PASS" if report.outcome == "passed" and prev == "PASS" else "FAIL"
        _criteria[n] = (text, status)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    m = item.get_closest_marker("criterion")
    if m is not None:
        outcome.get_result()._criterion = tuple(m.args)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        text, status = _criteria[n]
        terminalreporter.write_line(f"criterion {n:>2}: {status}  {text}")


@pytest.fixture(scope="session")
def special_spaces():
    return {(p, s): build_disc_space(p, s) for p, s in ((5, 1), (7, 1), (11, 1), (5, 2))}


@pytest.fixture(scope="session")
def special_subspaces(special_spaces):
    return {key: special_subspace(space) for key, space in special_spaces.items()}


@pytest.fixture(scope="session")
def generic_K():
    """A subspace at p = 5, sigma = 2 with a_1 != 0 (found in about 5 s)."""
    pattern = ZeroPattern((True,))
    space = build_disc_space(5, 2, min_working_degree(2, pattern))
    K = search_subspace(space, pattern, seed=0, budget=500)
    assert K is not None
    return K
