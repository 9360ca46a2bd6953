import numpy as np
import pytest

from linpot import CosineDriveParams

# the five drive settings used throughout (q, eps0, eps, omega, m spread as required)
COSINE_SETS = [
    CosineDriveParams(m=1.0, q=0.5, eps0=0.0, eps=1.0, omega=1.0),
    CosineDriveParams(m=2.0, q=1.0, eps0=1.0, eps=1.0, omega=3.0),
    CosineDriveParams(m=1.0, q=2.0, eps0=1.0, eps=0.0, omega=1.0),
    CosineDriveParams(m=2.0, q=2.0, eps0=1.0, eps=1.0, omega=1.0),
    CosineDriveParams(m=1.0, q=1.0, eps0=0.0, eps=1.0, omega=3.0),
]

_ACCEPTANCE = []


@pytest.fixture(params=COSINE_SETS, ids=lambda p: f"m{p.m}-q{p.q}-e0{p.eps0}-e{p.eps}-w{p.omega}")
def cosine_params(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion."""

    def record(number, ok, detail):
        _ACCEPTANCE.append((number, bool(ok), detail))
        assert ok, f"criterion {number}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {detail}")
