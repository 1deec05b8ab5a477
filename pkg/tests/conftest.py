import time
from contextlib import contextmanager

import pytest

RESULTS: dict = {}


@contextmanager
def _criterion(number, title, limit=None):
    """Time a criterion body; it sets ``state["violations"]`` and may add
    ``state["detail"]``.  Records one PASS/FAIL line and fails the test on
    violations or a blown time limit."""
    state = {"violations": 0, "detail": ""}
    start = time.perf_counter()
    error = None
    try:
        yield state
    except Exception as exc:  # recorded, then re-raised
        error = exc
    elapsed = time.perf_counter() - start
    ok = error is None and state["violations"] == 0 and (limit is None or elapsed < limit)
    bits = [f"violations={state['violations']}", f"time={elapsed:.2f}s"]
    if limit is not None:
        bits.append(f"limit={limit:g}s")
    if state["detail"]:
        bits.append(state["detail"])
    if error is not None:
        bits.append(f"error={error!r}")
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}  ({', '.join(bits)})"
    RESULTS[number] = line
    print(line)
    if error is not None:
        raise error
    assert state["violations"] == 0, line
    assert limit is None or elapsed < limit, line


@pytest.fixture
def criterion():
    return _criterion


def pytest_terminal_summary(terminalreporter):
    if RESULTS:
        terminalreporter.write_sep("=", "acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
