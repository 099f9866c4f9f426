import contextlib
import time

import pytest

# criterion number -> (title, passed, detail)
ACCEPTANCE = {}


class _Record:
    def __init__(self):
        self.detail = ""


@pytest.fixture
def criterion():
    """``with criterion(n, title) as rec:`` records PASS/FAIL for the summary."""

    @contextlib.contextmanager
    def cm(n, title):
        rec = _Record()
        t0 = time.perf_counter()
        try:
            yield rec
        except BaseException as e:
            ACCEPTANCE[n] = (title, False, f"{type(e).__name__}: {str(e).splitlines()[0] if str(e) else ''}")
            raise
        ACCEPTANCE[n] = (title, True, f"{rec.detail} [{time.perf_counter() - t0:.1f}s]".strip())

    return cm


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n} {'PASS' if ok else 'FAIL'}: {title} -- {detail}")
