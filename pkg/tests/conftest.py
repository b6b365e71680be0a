import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from test_acceptance import RESULTS  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        ok, note = RESULTS[k]
        line = f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}"
        terminalreporter.write_line(line + (f"  ({note})" if note else ""))
