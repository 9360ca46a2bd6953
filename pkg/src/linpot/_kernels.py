"""Hot inner loops, in two flavours.

Every kernel has a ``*_numpy`` implementation (vectorised, no JIT) and, when
numba is present, a ``*_numba`` twin compiled with ``@njit``.  The public
names at the bottom dispatch on :data:`linpot._backend.BACKEND`.  Both
flavours are always importable so tests and benchmarks can compare them.
"""
import numpy as np

from ._backend import BACKEND, HAVE_NUMBA

# ---------------------------------------------------------------------------
# tridiagonal solve:  a[i] x[i-1] + b[i] x[i] + c[i] x[i+1] = d[i]
# a[0] and c[-1] are ignored.
# ---------------------------------------------------------------------------


def tridiag_solve_numpy(a, b, c, d):
    """Odd-even cyclic reduction, vectorised over each reduction level."""
    n = d.shape[0]
    levels = max(1, int(np.ceil(np.log2(n + 1))))
    size = 2**levels - 1
    dtype = np.result_type(a, b, c, d)
    A = np.zeros(size, dtype)
    B = np.ones(size, dtype)
    C = np.zeros(size, dtype)
    D = np.zeros(size, dtype)
    A[1:n] = a[1:n]
    B[:n] = b
    C[: n - 1] = c[: n - 1]
    D[:n] = d

    s = 1
    while 2 * s - 1 < size:
        i = np.arange(2 * s - 1, size, 2 * s)
        lo = i - s
        hi = i + s
        alpha = -A[i] / B[lo]
        gamma = -C[i] / B[hi]
        B[i] = B[i] + alpha * C[lo] + gamma * A[hi]
        D[i] = D[i] + alpha * D[lo] + gamma * D[hi]
        A[i] = alpha * A[lo]
        C[i] = gamma * C[hi]
        s *= 2

    X = np.zeros(size + 1, dtype)  # X[-1] doubles as the zero right neighbour
    while s >= 1:
        i = np.arange(s - 1, size, 2 * s)
        left = np.where(i - s >= 0, i - s, size)
        right = np.where(i + s < size, i + s, size)
        X[i] = (D[i] - A[i] * X[left] - C[i] * X[right]) / B[i]
        s //= 2
    return X[:n]


def cn_propagate_numpy(psi, x, dx, dts, masses, forces):
    """Apply ``len(dts)`` Crank-Nicolson steps to the interior field ``psi``."""
    psi = psi.copy()
    n = psi.shape[0]
    for k in range(dts.shape[0]):
        dt, m, g = dts[k], masses[k], forces[k]
        kin = 1.0 / (2.0 * m * dx * dx)
        hd = 2.0 * kin + g * x
        off = -kin
        lap = np.empty_like(psi)
        lap[:] = hd * psi
        lap[1:] += off * psi[:-1]
        lap[:-1] += off * psi[1:]
        rhs = psi - 0.5j * dt * lap
        diag = 1.0 + 0.5j * dt * hd
        sub = np.full(n, 0.5j * dt * off, dtype=np.complex128)
        psi = tridiag_solve_numpy(sub, diag, sub, rhs)
    return psi


def airy_taylor_numpy(x, x0, y0, y1, nterms):
    """Sum the Taylor series of the Airy ODE ``y'' = x y`` about each ``x0``."""
    h = x - x0
    coeffs = np.empty((nterms,) + x.shape)
    coeffs[0] = y0
    coeffs[1] = y1
    coeffs[2] = 0.5 * x0 * y0
    for k in range(1, nterms - 2):
        coeffs[k + 2] = (x0 * coeffs[k] + coeffs[k - 1]) / ((k + 2) * (k + 1))
    val = coeffs[nterms - 1].copy()
    der = (nterms - 1) * coeffs[nterms - 1]
    for k in range(nterms - 2, -1, -1):
        val = val * h + coeffs[k]
        if k >= 1:
            der = der * h + k * coeffs[k]
    return val, der


if HAVE_NUMBA:
    from numba import njit

    @njit(cache=True)
    def tridiag_solve_numba(a, b, c, d):
        """Thomas algorithm (no pivoting; the CN matrices are diagonally dominant)."""
        n = d.shape[0]
        cp = np.empty(n, dtype=np.complex128)
        dp = np.empty(n, dtype=np.complex128)
        cp[0] = c[0] / b[0]
        dp[0] = d[0] / b[0]
        for i in range(1, n):
            den = b[i] - a[i] * cp[i - 1]
            cp[i] = c[i] / den
            dp[i] = (d[i] - a[i] * dp[i - 1]) / den
        out = np.empty(n, dtype=np.complex128)
        out[n - 1] = dp[n - 1]
        for i in range(n - 2, -1, -1):
            out[i] = dp[i] - cp[i] * out[i + 1]
        return out

    @njit(cache=True)
    def cn_propagate_numba(psi, x, dx, dts, masses, forces):
        n = psi.shape[0]
        cur = psi.copy()
        rhs = np.empty(n, dtype=np.complex128)
        cp = np.empty(n, dtype=np.complex128)
        dp = np.empty(n, dtype=np.complex128)
        for k in range(dts.shape[0]):
            dt, m, g = dts[k], masses[k], forces[k]
            kin = 1.0 / (2.0 * m * dx * dx)
            off = -kin
            half = 0.5j * dt
            for j in range(n):
                hd = 2.0 * kin + g * x[j]
                lap = hd * cur[j]
                if j > 0:
                    lap += off * cur[j - 1]
                if j < n - 1:
                    lap += off * cur[j + 1]
                rhs[j] = cur[j] - half * lap
            sub = half * off
            # forward sweep with constant off-diagonals
            den = 1.0 + half * (2.0 * kin + g * x[0])
            cp[0] = sub / den
            dp[0] = rhs[0] / den
            for j in range(1, n):
                den = 1.0 + half * (2.0 * kin + g * x[j]) - sub * cp[j - 1]
                cp[j] = sub / den
                dp[j] = (rhs[j] - sub * dp[j - 1]) / den
            cur[n - 1] = dp[n - 1]
            for j in range(n - 2, -1, -1):
                cur[j] = dp[j] - cp[j] * cur[j + 1]
        return cur

    @njit(cache=True)
    def airy_taylor_numba(x, x0, y0, y1, nterms):
        n = x.shape[0]
        val = np.empty(n)
        der = np.empty(n)
        coeffs = np.empty(nterms)
        for i in range(n):
            h = x[i] - x0[i]
            coeffs[0] = y0[i]
            coeffs[1] = y1[i]
            coeffs[2] = 0.5 * x0[i] * y0[i]
            for k in range(1, nterms - 2):
                coeffs[k + 2] = (x0[i] * coeffs[k] + coeffs[k - 1]) / ((k + 2) * (k + 1))
            v = coeffs[nterms - 1]
            d = (nterms - 1) * coeffs[nterms - 1]
            for k in range(nterms - 2, -1, -1):
                v = v * h + coeffs[k]
                if k >= 1:
                    d = d * h + k * coeffs[k]
            val[i] = v
            der[i] = d
        return val, der


if BACKEND == "numba":
    tridiag_solve = tridiag_solve_numba
    cn_propagate = cn_propagate_numba

    def airy_taylor(x, x0, y0, y1, nterms):
        shape = np.shape(x)
        v, d = airy_taylor_numba(
            np.ravel(x).astype(np.float64),
            np.ravel(x0).astype(np.float64),
            np.ravel(y0).astype(np.float64),
            np.ravel(y1).astype(np.float64),
            nterms,
        )
        return v.reshape(shape), d.reshape(shape)

else:
    tridiag_solve = tridiag_solve_numpy
    cn_propagate = cn_propagate_numpy
    airy_taylor = airy_taylor_numpy
