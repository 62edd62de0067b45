import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    results = test_acceptance.RESULTS
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 10):
        parts = sorted(k for k in results if k.rstrip("abc") == str(n))
        if not parts:
            terminalreporter.write_line(f"criterion {n}: NOT RUN")
            continue
        ok = all(results[k][0] for k in parts)
        if len(parts) == 1:
            detail = results[parts[0]][1]
        else:
            detail = " | ".join(f"{k} {'pass' if results[k][0] else 'FAIL'}: {results[k][1]}" for k in parts)
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
