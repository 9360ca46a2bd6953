"""Airy function Ai and its derivative for real arguments.

Three regimes:

* ``x < -10``: oscillatory asymptotic expansion;
* ``-10 <= x <= 8``: Taylor series of ``y'' = x y`` about the nearest node
  of a table built once at import;
* ``x > 8``: exponentially decaying asymptotic expansion (underflows to 0).

The node table is seeded with Ai(0), Ai'(0) for ``x <= 0`` and with the
decaying asymptotic form at ``x = 12`` for ``x > 0``, then filled by Taylor
steps.  Stepping towards ``x = 0`` from the right is stable because Ai is the
dominant solution in that direction; on the left both solutions oscillate
with equal amplitude.
"""
from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from . import _kernels
from .errors import EvaluationError

NEG_SWITCH = -10.0
POS_SWITCH = 8.0
NODE_STEP = 0.25
NTERMS = 30
_SEED_X = 12.0

AI0 = 1.0 / (3.0 ** (2.0 / 3.0) * math.gamma(2.0 / 3.0))
AIP0 = -1.0 / (3.0 ** (1.0 / 3.0) * math.gamma(1.0 / 3.0))


@dataclass(frozen=True)
class AiryValue:
    ai: float
    ai_prime: float


def _u_coeffs(n):
    u = np.empty(n)
    u[0] = 1.0
    for k in range(1, n):
        u[k] = u[k - 1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216.0 * k)
    v = np.array([-(6 * k + 1) / (6 * k - 1) * u[k] for k in range(n)])
    return u, v


_U, _V = _u_coeffs(40)


def _truncated_sum(coef, z, alternate=True):
    """Sum ``coef[k] (-1/z)^k`` up to the smallest term (optimal truncation)."""
    z = np.asarray(z, dtype=float)
    total = np.zeros_like(z)
    term_prev = np.full_like(z, np.inf)
    active = np.ones(z.shape, dtype=bool)
    zinv = 1.0 / z
    power = np.ones_like(z)
    for k in range(coef.shape[0]):
        sign = (-1.0) ** k if alternate else 1.0
        term = coef[k] * power
        active &= np.abs(term) < np.abs(term_prev)
        total = np.where(active, total + sign * term, total)
        term_prev = np.where(active, term, term_prev)
        power = power * zinv
    return total


def _asymptotic_pos(x):
    x = np.asarray(x, dtype=float)
    zeta = (2.0 / 3.0) * x * np.sqrt(x)
    pref = np.exp(-zeta) / (2.0 * math.sqrt(math.pi))
    q = x**0.25
    with np.errstate(under="ignore", invalid="ignore"):
        ai = pref / q * _truncated_sum(_U, zeta)
        aip = -pref * q * _truncated_sum(_V, zeta)
    return ai, aip


def _split(a):
    c = 134217729.0 * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _zeta_dd(r):
    """(2/3) r^(3/2) as an unevaluated sum hi + lo (double-double)."""
    s = np.sqrt(r)
    p, e = _two_prod(s, s)
    ds = ((r - p) - e) / (2.0 * s)
    p1, e1 = _two_prod(r, s)
    lo = e1 + r * ds
    q = 2.0 * p1 / 3.0
    P, E = _two_prod(np.full_like(q, 3.0), q)
    q_lo = ((2.0 * p1 - P) - E) / 3.0 + 2.0 * lo / 3.0
    return q, q_lo


def _asymptotic_neg(x):
    r = -np.asarray(x, dtype=float)
    zeta, zeta_lo = _zeta_dd(r)
    # even / odd parts of the alternating series in powers of 1/zeta
    zsq = zeta * zeta
    u_even = _truncated_sum(_U[0::2], zsq)
    u_odd = _truncated_sum(_U[1::2], zsq) / zeta
    v_even = _truncated_sum(_V[0::2], zsq)
    v_odd = _truncated_sum(_V[1::2], zsq) / zeta
    # cos/sin of (zeta - pi/4) without rounding the shifted phase
    cz, sz = np.cos(zeta), np.sin(zeta)
    cz, sz = cz - sz * zeta_lo, sz + cz * zeta_lo
    c = (cz + sz) * math.sqrt(0.5)
    s = (sz - cz) * math.sqrt(0.5)
    q = r**0.25
    ai = (c * u_even + s * u_odd) / (math.sqrt(math.pi) * q)
    aip = q * (s * v_even - c * v_odd) / math.sqrt(math.pi)
    return ai, aip


def _taylor_step(x0, y0, y1, h):
    v, d = _kernels.airy_taylor_numpy(np.array([x0 + h]), np.array([x0]), np.array([y0]), np.array([y1]), NTERMS)
    return float(v[0]), float(d[0])


@lru_cache(maxsize=1)
def _node_table():
    lo = NEG_SWITCH - 2 * NODE_STEP
    n_neg = int(round(-lo / NODE_STEP))
    n_pos = int(round(_SEED_X / NODE_STEP))
    xs = NODE_STEP * np.arange(-n_neg, n_pos + 1)
    ai = np.empty_like(xs)
    aip = np.empty_like(xs)
    centre = n_neg
    ai[centre], aip[centre] = AI0, AIP0
    for k in range(centre - 1, -1, -1):
        ai[k], aip[k] = _taylor_step(xs[k + 1], ai[k + 1], aip[k + 1], -NODE_STEP)
    a, b = _asymptotic_pos(np.array([_SEED_X]))
    ai[-1], aip[-1] = a[0], b[0]
    for k in range(len(xs) - 2, centre, -1):
        ai[k], aip[k] = _taylor_step(xs[k + 1], ai[k + 1], aip[k + 1], -NODE_STEP)
    xs.setflags(write=False)
    ai.setflags(write=False)
    aip.setflags(write=False)
    return xs, ai, aip


def _positive_sweep_at_zero():
    """Value reached at x=0 by the backward sweep from the asymptotic seed (diagnostic)."""
    xs, ai, aip = _node_table()
    k = int(np.searchsorted(xs, 0.0))
    return _taylor_step(xs[k + 1], ai[k + 1], aip[k + 1], -NODE_STEP)


def _taylor_region(x):
    xs, ai, aip = _node_table()
    idx = np.rint((x - xs[0]) / NODE_STEP).astype(np.intp)
    idx = np.clip(idx, 0, len(xs) - 1)
    return _kernels.airy_taylor(x, xs[idx], ai[idx], aip[idx], NTERMS)


def airy_arrays(x):
    """Vectorised Ai(x), Ai'(x); returns two float arrays shaped like ``x``."""
    x = np.asarray(x, dtype=float)
    if np.isnan(x).any():
        raise EvaluationError("Airy function evaluated at NaN")
    ai = np.empty(x.shape)
    aip = np.empty(x.shape)
    neg = x < NEG_SWITCH
    pos = x > POS_SWITCH
    mid = ~(neg | pos)
    if neg.any():
        ai[neg], aip[neg] = _asymptotic_neg(x[neg])
    if pos.any():
        ai[pos], aip[pos] = _asymptotic_pos(x[pos])
    if mid.any():
        ai[mid], aip[mid] = _taylor_region(x[mid])
    # x = +inf reaches here as 0 * inf terms
    ai[np.isposinf(x)] = 0.0
    aip[np.isposinf(x)] = 0.0
    return ai, aip


def airy_ai(x):
    """Return :class:`AiryValue` for a scalar ``x``."""
    if isinstance(x, float) and math.isnan(x):
        raise EvaluationError("Airy function evaluated at NaN")
    ai, aip = airy_arrays(np.array([float(x)]))
    return AiryValue(float(ai[0]), float(aip[0]))


@lru_cache(maxsize=1)
def airy_peak_offset():
    """Location of the global maximum of Ai (first zero of Ai').

    Newton on Ai' using Ai'' = x Ai.
    """
    x = -1.0
    for _ in range(50):
        v = airy_ai(x)
        step = v.ai_prime / (x * v.ai)
        x -= step
        if abs(step) < 1e-16:
            break
    return x
