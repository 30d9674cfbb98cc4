"""Shared registry for acceptance-criterion results.

test_acceptance.py records one entry per criterion; the
pytest_terminal_summary hook in conftest.py prints them as a block at
the end of the run so every criterion shows a single [PASS]/[FAIL]
line regardless of output capturing.
"""

RESULTS = []


def record(name: str, ok: bool, detail: str) -> bool:
    RESULTS.append((name, ok, detail))
    return ok
