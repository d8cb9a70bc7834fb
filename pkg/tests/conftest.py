import time
from contextlib import contextmanager

import pytest

RESULTS = {}


@pytest.fixture
def criterion():
    """Record one acceptance criterion: pass if the block raises nothing."""

    @contextmanager
    def record(number, title):
        t0 = time.perf_counter()
        try:
            yield
        except BaseException:
            RESULTS[number] = (title, False, time.perf_counter() - t0)
            raise
        RESULTS[number] = (title, True, time.perf_counter() - t0)

    return record


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        title, ok, secs = RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({secs:.2f} s)")
