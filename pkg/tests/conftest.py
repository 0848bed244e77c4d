import pytest

from fuzzreg import pipeline


@pytest.fixture(scope="session")
def case_study():
    return pipeline.analyze(pipeline.bundled_survey(), pipeline.bundled_config())


@pytest.fixture(scope="session")
def case_report(case_study):
    return pipeline.to_report(case_study)


_criteria: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = report.keywords.get("criterion")
    if not marker:
        return
    label = report.user_properties and dict(report.user_properties).get("criterion")
    if label:
        _criteria[label] = ("PASS" if report.passed else "FAIL", report.nodeid)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: int(s.split()[0])):
        status, node = _criteria[label]
        terminalreporter.write_line(f"criterion {label}: {status}")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion")


@pytest.fixture(autouse=True)
def _tag_criterion(request, record_property):
    m = request.node.get_closest_marker("criterion")
    if m is not None:
        record_property("criterion", f"{m.args[0]} {m.args[1]}")
