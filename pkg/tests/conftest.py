import pytest

from corpus import build_corpus
from polardeg.invariants import full_report


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion number n")


@pytest.fixture(scope="session")
def corpus_reports():
    """(kind, map, report) for the seeded corpus, computed once per session."""
    return [(kind, m, full_report(m)) for kind, m in build_corpus()]


# --- one summary line per acceptance criterion -------------------------------------------

_outcomes = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    rep = (yield).get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, text = mark.args
    entry = _outcomes.setdefault(n, {"text": text, "results": []})
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        if hasattr(rep, "wasxfail"):
            entry["results"].append("xfail" if rep.skipped else "xpass")
            entry.setdefault("notes", []).append(rep.wasxfail)
        else:
            entry["results"].append(rep.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_outcomes):
        e = _outcomes[n]
        res = e["results"]
        if not res or any(r not in ("passed", "xfail") for r in res):
            status = "FAIL"
        elif "xfail" in res:
            # the checkable part passes; one stated item is known not to hold
            status = "PARTIAL"
        else:
            status = "PASS"
        line = f"criterion {n:>2}: {status:<7} {e['text']}"
        for note in e.get("notes", []):
            line += f"  [does not hold as stated: {note}]"
        tr.write_line(line)
