import contextlib
import os
import time

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))


_CRITERIA: list[str] = []


@pytest.fixture
def criterion():
    """Context manager recording one pass/fail line per acceptance criterion."""

    @contextlib.contextmanager
    def run(number, title, limit=None):
        info = {}
        t0 = time.perf_counter()
        ok = False
        try:
            yield info
            elapsed = time.perf_counter() - t0
            if limit is not None:
                assert elapsed < limit, f"took {elapsed:.1f} s, limit {limit} s"
            ok = True
        finally:
            elapsed = time.perf_counter() - t0
            extra = f"  [{info['detail']}]" if info.get("detail") else ""
            line = f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {title} ({elapsed:.1f} s){extra}"
            _CRITERIA.append(line)
            print("\n" + line)

    return run


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)
