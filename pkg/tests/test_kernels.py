import os
import subprocess
import sys

import numpy as np
import pytest

from linpot import _kernels
from linpot._backend import HAVE_NUMBA

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")


def random_system(rng, n):
    a = rng.normal(size=n) + 1j * rng.normal(size=n)
    c = rng.normal(size=n) + 1j * rng.normal(size=n)
    b = 5 + rng.normal(size=n) + 1j * rng.normal(size=n)
    d = rng.normal(size=n) + 1j * rng.normal(size=n)
    dense = np.diag(b) + np.diag(a[1:], -1) + np.diag(c[:-1], 1)
    return a, b, c, d, dense


@pytest.mark.parametrize("n", [1, 2, 3, 7, 8, 100, 1023, 1500])
def test_tridiag_numpy_matches_dense(rng, n):
    a, b, c, d, dense = random_system(rng, n)
    assert np.allclose(_kernels.tridiag_solve_numpy(a, b, c, d), np.linalg.solve(dense, d), atol=1e-13)


@needs_numba
@pytest.mark.parametrize("n", [1, 2, 5, 300])
def test_tridiag_numba_matches_dense(rng, n):
    a, b, c, d, dense = random_system(rng, n)
    assert np.allclose(_kernels.tridiag_solve_numba(a, b, c, d), np.linalg.solve(dense, d), atol=1e-13)


@needs_numba
def test_cn_backends_agree(rng):
    n = 500
    x = np.linspace(-10, 10, n + 2)[1:-1]
    dx = x[1] - x[0]
    psi = np.exp(-x**2) * np.exp(2j * x)
    dts = np.full(40, 1e-3)
    masses = 1 + 0.1 * np.arange(40) / 40
    forces = np.sin(np.arange(40) / 7)
    a = _kernels.cn_propagate_numpy(psi, x, dx, dts, masses, forces)
    b = _kernels.cn_propagate_numba(psi, x, dx, dts, masses, forces)
    assert np.max(np.abs(a - b)) < 1e-12


@needs_numba
def test_airy_taylor_backends_agree(rng):
    x0 = np.round(rng.uniform(-10, 8, 200) * 4) / 4
    x = x0 + rng.uniform(-0.125, 0.125, 200)
    y0, y1 = rng.normal(size=200), rng.normal(size=200)
    a = _kernels.airy_taylor_numpy(x, x0, y0, y1, 30)
    b = _kernels.airy_taylor_numba(x, x0, y0, y1, 30)
    assert np.allclose(a[0], b[0], rtol=1e-14, atol=1e-15)
    assert np.allclose(a[1], b[1], rtol=1e-14, atol=1e-15)


def test_env_flag_selects_numpy():
    code = (
        "import numpy as np, linpot, linpot._kernels as K;"
        "print(linpot.BACKEND, K.tridiag_solve is K.tridiag_solve_numpy);"
        "print(repr(float(linpot.airy_ai(-5.0).ai)))"
    )
    env = dict(os.environ, LINPOT_BACKEND="numpy")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    lines = out.stdout.split()
    assert lines[:2] == ["numpy", "True"]
    from linpot import airy_ai

    assert float(lines[2]) == pytest.approx(airy_ai(-5.0).ai, rel=1e-14)


def test_bad_backend_rejected():
    env = dict(os.environ, LINPOT_BACKEND="fortran")
    out = subprocess.run([sys.executable, "-c", "import linpot"], env=env, capture_output=True, text=True)
    assert out.returncode != 0 and "LINPOT_BACKEND" in out.stderr
