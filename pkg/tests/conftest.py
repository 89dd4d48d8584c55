import pytest

from fgr.pipeline import Toolchain, seed_lexicon, seed_mapping


@pytest.fixture(scope="session")
def lexicon():
    return seed_lexicon()


@pytest.fixture(scope="session")
def mapping():
    return seed_mapping()


@pytest.fixture(scope="session")
def chain():
    return Toolchain()


# -- acceptance report ---------------------------------------------------------

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = next((m for m in getattr(report, "criterion_markers", [])), None)
    if marker is None:
        return
    n, title = marker
    prev = _criteria.get(n, (title, "PASS"))[1]
    status = "FAIL" if report.failed or prev == "FAIL" else "PASS"
    _criteria[n] = (title, status)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    report.criterion_markers = [tuple(m.args) for m in item.iter_markers("criterion")]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, status = _criteria[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {title}")
