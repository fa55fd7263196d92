import math

import pytest

from minlen.deformation import from_minimal_length
from minlen.units import length_to_atomic

DX_MIN = length_to_atomic(1e-16)
ETAS = (1 / 3, 1 / 2, 1.0)

_ACCEPTANCE = []


def record_criterion(number, title, passed, detail=""):
    _ACCEPTANCE.append((number, title, passed, detail))


@pytest.fixture
def dx_min():
    return DX_MIN


@pytest.fixture(params=ETAS, ids=["eta=1/3", "eta=1/2", "eta=1"])
def deformed(request):
    return from_minimal_length(DX_MIN, request.param)


def moment_states(n_top=5):
    """All (n, l, m) with n <= n_top, 1 <= l <= n-1, 1 <= m <= l."""
    return [(n, l, m) for n in range(2, n_top + 1) for l in range(1, n) for m in range(1, l + 1)]


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(_ACCEPTANCE, key=lambda t: (t[0], t[1])):
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] criterion {number}: {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)


def rel(a, b):
    return abs(a - b) / abs(b) if b else abs(a)


assert math.isclose(ETAS[0] * 3, 1.0)
