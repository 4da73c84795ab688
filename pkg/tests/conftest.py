import pytest

from resint import PolyRing
from resint.detresid import build_context, residual_chain, sparse_reduction


@pytest.fixture(scope="session")
def kxy():
    return PolyRing(["x", "y"])


@pytest.fixture(scope="session")
def kxyz():
    return PolyRing(["x", "y", "z"])


@pytest.fixture(scope="session")
def ctx4():
    return build_context(4)


@pytest.fixture(scope="session")
def chain4(ctx4):
    return residual_chain(ctx4, sparse_reduction(ctx4))


@pytest.fixture(autouse=True)
def _private_cache(tmp_path_factory, monkeypatch):
    # never touch the user's cache directory from tests
    monkeypatch.setenv("RESINT_CACHE_DIR", str(tmp_path_factory.getbasetemp() / "cache"))


_CRITERIA: dict[int, list[bool]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _CRITERIA.setdefault(mark.args[0], []).append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        results = _CRITERIA[k]
        verdict = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {k:2d}: {verdict}  ({sum(results)}/{len(results)} checks)")
