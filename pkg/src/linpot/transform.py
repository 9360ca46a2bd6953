"""Time integrals that parameterise every analytic solution.

For a mass M(t) and force coefficient g1(t) the transform state at time t is

    s       = int_0^t dsigma / M
    beta    = -int_0^t g1
    nu      = -int_0^t beta / M
    phase_g = int_0^t beta^2 / (2 M)
    nested  = int_0^t (1/M(tau)) int_0^tau g1

``nu`` and ``nested`` are the same quantity; the quadrature path computes
``nested`` by parts, ``s * int g1 - int s g1``, so the two act as a
cross-check.
"""
from dataclasses import dataclass
import math

import numpy as np

from .errors import ConvergenceError, EvaluationError, RangeError
from .profiles import Constant, MassProfile, Polynomial, Sinusoid
from .quadrature import EPS, NODES, QuadratureConfig, WEIGHTS_G, WEIGHTS_K

FIELDS = ("s", "beta", "nu", "phase_g", "nested")


@dataclass(frozen=True)
class TransformState:
    """Values at time ``t``; fields are floats, or arrays for vectorised use."""

    t: object
    s: object
    beta: object
    nu: object
    phase_g: object
    nested: object

    def __getitem__(self, k):
        return TransformState(*(float(np.asarray(getattr(self, f))[k]) for f in ("t",) + FIELDS))

    def __len__(self):
        return np.size(self.t)


# ---------------------------------------------------------------------------
# closed forms (constant mass)
# ---------------------------------------------------------------------------


def _closed_form_available(mass, force):
    return isinstance(mass.profile, Constant) and isinstance(force, (Constant, Sinusoid, Polynomial))


def _closed_form(mass, force, t):
    m = float(mass.profile.c)
    if isinstance(force, Sinusoid):
        q, e0, e, w = force.q, force.eps0, force.eps, force.omega
        wt = w * t
        beta = -q * (e0 * t + (e / w) * np.sin(wt))
        nu = (q / m) * (0.5 * e0 * t**2 - (e / w**2) * np.cos(wt) + e / w**2)
        phase_g = (q * q / (2 * m * w**3)) * (
            e0 * e0 * wt**3 / 3 + 2 * e0 * e * (np.sin(wt) - wt * np.cos(wt)) + e * e * (0.5 * wt - 0.25 * np.sin(2 * wt))
        )
        return t / m, beta, nu, phase_g, nu.copy()
    poly = force.poly if isinstance(force, Polynomial) else np.polynomial.Polynomial([force.c])
    ig = poly.integ()
    beta_p = -ig
    assert np.allclose((beta_p.deriv() + poly).coef, 0.0)  # g1 + d(beta)/dt = 0
    nu_p = ig.integ() / m
    phase_p = (ig * ig).integ() / (2 * m)
    nu = nu_p(t)
    return t / m, beta_p(t), nu, phase_p(t), nu.copy()


# ---------------------------------------------------------------------------
# nested Gauss-Kronrod panels
# ---------------------------------------------------------------------------
#
# On a panel [a, b] the inner integrals from a to each Kronrod node are taken
# with a Kronrod rule mapped onto [a, node].  With ig(tau) = int_a^tau g1 and
# im(tau) = int_a^tau 1/M, every panel contribution is a combination of five
# prefix-free integrals
#
#   P0 = int 1/M   P1 = int g1   P2 = int ig/M   P3 = int ig^2/M   P4 = int im g1
#
# so panels can be evaluated in one batch and chained afterwards.

_SUB = 0.5 * (1.0 + NODES)  # fractional position of each node within its panel


def _panel_moments(inv_m, force, a, b):
    """Prefix-free moments and error bounds for panels [a_i, b_i]."""
    a = np.asarray(a, dtype=float)[:, None]
    b = np.asarray(b, dtype=float)[:, None]
    half = 0.5 * (b - a)
    tau = a + (b - a) * _SUB[None, :]  # (n, 15)
    sub_len = (tau - a)[:, :, None]  # (n, 15, 1)
    eta = a[:, :, None] + sub_len * _SUB[None, None, :]  # (n, 15, 15)
    pts = np.concatenate([tau.ravel(), eta.ravel()])
    mv = inv_m(pts)
    gv = force(pts)
    if not (np.all(np.isfinite(mv)) and np.all(np.isfinite(gv))):
        raise EvaluationError("profile not finite inside quadrature panel")
    n = a.shape[0]
    m_tau, m_eta = mv[: n * 15].reshape(n, 15), mv[n * 15 :].reshape(n, 15, 15)
    g_tau, g_eta = gv[: n * 15].reshape(n, 15), gv[n * 15 :].reshape(n, 15, 15)

    sub_half = 0.5 * sub_len[:, :, 0]
    ig = sub_half * (g_eta @ WEIGHTS_K)
    im = sub_half * (m_eta @ WEIGHTS_K)
    ig_err = np.abs(ig - sub_half * (g_eta @ WEIGHTS_G))
    im_err = np.abs(im - sub_half * (m_eta @ WEIGHTS_G))

    integrands = np.stack([m_tau, g_tau, ig * m_tau, ig * ig * m_tau, im * g_tau])  # (5, n, 15)
    kron = half[None, :, 0] * (integrands @ WEIGHTS_K)
    gauss = half[None, :, 0] * (integrands @ WEIGHTS_G)
    absint = np.abs(half[None, :, 0]) * (np.abs(integrands) @ WEIGHTS_K)
    err = np.abs(kron - gauss)
    # inner-rule errors propagated through the outer weights
    w = np.abs(half) * WEIGHTS_K[None, :]
    inner = np.stack([
        np.zeros(n), np.zeros(n),
        np.sum(w * ig_err * np.abs(m_tau), axis=1),
        np.sum(w * 2 * np.abs(ig) * ig_err * np.abs(m_tau), axis=1),
        np.sum(w * im_err * np.abs(g_tau), axis=1),
    ])
    return kron, err + inner, absint


def _chain(moments, errors):
    """Cumulative transform values at panel right ends (prefix at left ends too)."""
    P0, P1, P2, P3, P4 = moments
    E0, E1, E2, E3, E4 = errors
    s_end = np.cumsum(P0)
    ig_end = np.cumsum(P1)
    s_a = np.concatenate([[0.0], s_end[:-1]])
    ig_a = np.concatenate([[0.0], ig_end[:-1]])
    beta_a = -ig_a
    d_nu = -beta_a * P0 + P2
    d_phase = 0.5 * (beta_a**2 * P0 - 2 * beta_a * P2 + P3)
    d_j = s_a * P1 + P4
    e_nu = np.abs(beta_a) * E0 + E2
    e_phase = 0.5 * (beta_a**2 * E0 + 2 * np.abs(beta_a) * E2 + E3)
    e_j = np.abs(s_a) * E1 + E4
    pref = dict(s_a=s_a, ig_a=ig_a,
                nu_a=np.concatenate([[0.0], np.cumsum(d_nu)[:-1]]),
                phase_a=np.concatenate([[0.0], np.cumsum(d_phase)[:-1]]),
                j_a=np.concatenate([[0.0], np.cumsum(d_j)[:-1]]))
    totals = dict(s=s_end[-1], ig=ig_end[-1], nu=np.sum(d_nu), phase=np.sum(d_phase), j=np.sum(d_j))
    errs = np.stack([E0, E1, e_nu, e_phase, e_j + np.abs(s_end[-1]) * E1])
    return pref, totals, errs


class _PanelTable:
    """Adaptive partition of [0, T] together with prefix values at panel edges."""

    def __init__(self, inv_m, force, T, breakpoints, cfg):
        self.inv_m, self.force, self.cfg = inv_m, force, cfg
        edges = np.unique(np.concatenate([[0.0, T], [b for b in breakpoints if 0.0 < b < T]]))
        while edges.size - 1 < 2:
            edges = np.unique(np.concatenate([edges, 0.5 * (edges[:-1] + edges[1:])]))
        a, b = edges[:-1], edges[1:]
        mom, err, absint = _panel_moments(inv_m, force, a, b)
        while True:
            pref, totals, errs = _chain(mom, err)
            # rounding floor: the same propagation applied to the integrals of |f|
            floor = 50 * EPS * np.abs(_chain(mom, absint)[2])
            tols = np.array([cfg.tolerance(totals[k]) for k in ("s", "ig", "nu", "phase", "j")])
            tols = np.maximum(tols, floor.sum(axis=1))
            if np.all(errs.sum(axis=1) <= tols):
                break
            score = np.max(np.where(errs > floor, errs, 0.0) / tols[:, None], axis=0)
            if a.size >= cfg.max_subdivisions:
                raise ConvergenceError(
                    f"transform quadrature did not converge within {cfg.max_subdivisions} panels",
                    estimate=totals, error=errs.sum(axis=1))
            split = score >= 0.25 * score.max()
            budget = cfg.max_subdivisions - a.size
            if split.sum() > budget:
                order = np.argsort(-score, kind="stable")[:budget]
                split = np.zeros_like(split)
                split[order] = True
            mid = 0.5 * (a[split] + b[split])
            new_a = np.concatenate([a[split], mid])
            new_b = np.concatenate([mid, b[split]])
            nm, ne, na = _panel_moments(inv_m, force, new_a, new_b)
            a = np.concatenate([a[~split], new_a])
            b = np.concatenate([b[~split], new_b])
            mom = np.concatenate([mom[:, ~split], nm], axis=1)
            err = np.concatenate([err[:, ~split], ne], axis=1)
            absint = np.concatenate([absint[:, ~split], na], axis=1)
            order = np.argsort(a, kind="stable")
            a, b = a[order], b[order]
            mom, err, absint = mom[:, order], err[:, order], absint[:, order]
        self.a, self.b = a, b
        self.pref = pref

    def evaluate(self, t):
        """Transform fields at times ``t`` (1-D array within [0, T])."""
        idx = np.clip(np.searchsorted(self.a, t, side="right") - 1, 0, self.a.size - 1)
        a = self.a[idx]
        mom, _, _ = _panel_moments(self.inv_m, self.force, a, t)
        P0, P1, P2, P3, P4 = mom
        p = {k: v[idx] for k, v in self.pref.items()}
        beta_a = -p["ig_a"]
        s = p["s_a"] + P0
        ig = p["ig_a"] + P1
        nu = p["nu_a"] - beta_a * P0 + P2
        phase = p["phase_a"] + 0.5 * (beta_a**2 * P0 - 2 * beta_a * P2 + P3)
        j = p["j_a"] + p["s_a"] * P1 + P4
        return s, -ig, nu, phase, s * ig - j


def _quadrature_forward(mass, force, t, cfg):
    """Quadrature path for t >= 0."""
    out = np.zeros((5, t.size))
    pos = t > 0
    if pos.any():
        T = float(t[pos].max())
        breaks = tuple(mass.profile.breakpoints()) + tuple(force.breakpoints())
        table = _PanelTable(lambda u: 1.0 / mass.profile(u), force, T, breaks, cfg)
        out[:, pos] = np.array(table.evaluate(t[pos]))
    return out


class _Reflected:
    """p(-t), for integrating over negative times."""

    def __init__(self, p):
        self.p = p

    def __call__(self, t):
        return self.p(-np.asarray(t, dtype=float))

    def breakpoints(self):
        return tuple(-b for b in self.p.breakpoints())


class _ReflectedMass:
    def __init__(self, mass):
        self.profile = _Reflected(mass.profile)


def _quadrature(mass, force, t, cfg):
    out = _quadrature_forward(mass, force, np.where(t > 0, t, 0.0), cfg)
    neg = t < 0
    if neg.any():
        # substitute t -> -t: s, beta, phase_g are odd, nu and nested even
        r = _quadrature_forward(_ReflectedMass(mass), _Reflected(force), -t[neg], cfg)
        out[:, neg] = r * np.array([-1.0, -1.0, 1.0, -1.0, 1.0])[:, None]
    return out


def transform_arrays(mass, force, times, cfg=QuadratureConfig()):
    """Vectorised transform state for an array of times (any order)."""
    if not isinstance(mass, MassProfile):
        raise TypeError("mass must be a MassProfile")
    t = np.asarray(times, dtype=float)
    shape = t.shape
    t = t.ravel()
    if not np.all(np.isfinite(t)):
        raise RangeError("times must be finite")
    mass.check_times(t)
    if cfg.closed_form and _closed_form_available(mass, force):
        vals = _closed_form(mass, force, t)
    else:
        uniq, inverse = np.unique(t, return_inverse=True)
        vals = _quadrature(mass, force, uniq, cfg)[:, inverse]
    vals = [np.where(t == 0.0, 0.0, np.asarray(v, dtype=float)).reshape(shape) for v in vals]
    return TransformState(t.reshape(shape), *vals)


def transform_state(mass, force, t, cfg=QuadratureConfig()):
    """Transform state at a single time ``t``."""
    t = float(t)
    if math.isnan(t):
        raise RangeError("t is NaN")
    return transform_arrays(mass, force, np.array([t]), cfg)[0]


def transform_grid(mass, force, times, cfg=QuadratureConfig()):
    """Transform states at ascending ``times``, sharing one panel table."""
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or np.any(np.diff(times) < 0):
        raise ValueError("times must be a 1-D ascending sequence")
    arr = transform_arrays(mass, force, times, cfg)
    return [arr[k] for k in range(times.size)]
