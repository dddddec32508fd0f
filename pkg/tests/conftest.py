import pytest

from rpys.fixture import build_corpus, default_spec, generate_fixture
from rpys.pipeline import analyze

_acceptance = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("acceptance")
        if m is not None:
            _acceptance.setdefault(item.nodeid, (m.args[0], m.args[1], []))


def pytest_runtest_logreport(report):
    if report.nodeid in _acceptance and (report.when == "call" or report.failed):
        _acceptance[report.nodeid][2].append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    by_id = {}
    for crit, title, outcomes in _acceptance.values():
        ok, _ = by_id.get(crit, (True, title))
        by_id[crit] = (ok and bool(outcomes) and all(outcomes), title)
    terminalreporter.section("acceptance criteria")
    for crit in sorted(by_id):
        ok, title = by_id[crit]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {crit}  {title}")


@pytest.fixture(scope="session")
def fixture_bytes():
    return generate_fixture(default_spec(seed=0), "wos")


@pytest.fixture(scope="session")
def fixture_corpus():
    return build_corpus(default_spec(seed=0))


@pytest.fixture(scope="session")
def fixture_analysis(fixture_corpus):
    return analyze(fixture_corpus)
