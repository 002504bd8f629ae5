import contextlib
import time

import pytest

ACCEPTANCE_LINES: list[tuple[int, str]] = []


class _Record:
    detail = ""


@pytest.fixture
def criterion(capsys):
    """Context manager printing one PASS/FAIL line for an acceptance criterion.

    A criterion fails if its body raises or if it overruns ``limit_s``.
    """

    @contextlib.contextmanager
    def check(number: int, title: str, limit_s: float | None = None):
        rec = _Record()
        start = time.perf_counter()
        ok = False
        try:
            yield rec
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            overrun = limit_s is not None and elapsed > limit_s
            status = "PASS" if ok and not overrun else "FAIL"
            extra = f" runtime over {limit_s:g}s limit" if overrun else ""
            line = f"[{status}] criterion {number:>2}: {title} ({elapsed:.2f}s) {rec.detail}{extra}".rstrip()
            ACCEPTANCE_LINES.append((number, line))
            with capsys.disabled():
                print("\n" + line)
        if overrun:
            pytest.fail(line)

    return check


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
