"""Collects per-criterion outcomes of the acceptance suite and prints them at the end."""

import pytest

_outcomes: dict[int, list[bool]] = {}
_notes: list[str] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        _notes.extend(text for name, text in rep.user_properties if name == "note")
    mark = item.get_closest_marker("criterion")
    if mark is not None and (rep.when == "call" or rep.failed):
        _outcomes.setdefault(mark.args[0], []).append(rep.passed)


@pytest.fixture
def note(record_property):
    """Attach an informational line to the acceptance summary."""
    return lambda text: record_property("note", text)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(_outcomes):
        tr.write_line(f"criterion {k:2d}: {'PASS' if all(_outcomes[k]) else 'FAIL'}")
    for text in _notes:
        tr.write_line(f"info: {text}")
