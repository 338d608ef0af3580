import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("ci", deadline=None, max_examples=60)
settings.load_profile("ci")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_CRITERIA: dict[int, str] = {}


@pytest.fixture
def criterion():
    """``criterion(number, title, checks, note=None)`` records one summary
    line; each check is ``(label, ok)``. Returns the failed labels."""
    def record(number, title, checks, note=None):
        failed = [label for label, ok in checks if not ok]
        status = "PASS" if not failed else "FAIL"
        line = f"criterion {number} {status}  {title} ({len(checks) - len(failed)}/{len(checks)} checks)"
        if failed:
            line += "; failed: " + ", ".join(failed)
        if note:
            line += f" [{note}]"
        _CRITERIA[number] = line
        print(line)
        return failed
    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[k])
