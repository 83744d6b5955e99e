import pytest

_RESULTS = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_RESULTS] = {}


@pytest.fixture
def record_criterion(request):
    """Store one summary line per acceptance criterion; returns the verdict."""
    store = request.config.stash[_RESULTS]

    def record(number, title, measured, tol, detail=""):
        ok = bool(measured <= tol)
        store[number] = (title, measured, tol, ok, detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_RESULTS, {})
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(store):
        title, measured, tol, ok, detail = store[number]
        line = f"{'PASS' if ok else 'FAIL'}  [{number}] {title}: {measured:.3e} <= {tol:.0e}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
