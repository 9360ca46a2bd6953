import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate as sp_integrate

from linpot import (Constant, MassProfile, Polynomial, QuadratureConfig, RangeError, Sinusoid, Tabulated,
                    transform_grid, transform_state)
from linpot.transform import FIELDS, transform_arrays

QUAD = QuadratureConfig(closed_form=False)
KNOTS = np.linspace(-1.0, 11.0, 481)
TAB_MASS = MassProfile(Tabulated(KNOTS, 1 + 0.3 * np.sin(KNOTS)))


def brute_force(mass, force, t):
    """Definitions integrated with scipy, inner integrals recomputed at every node."""
    opts = dict(epsabs=1e-13, epsrel=1e-13, limit=400)
    inv_m = lambda u: 1.0 / float(mass(u))
    beta = lambda u: -sp_integrate.quad(lambda v: float(force(v)), 0, u, **opts)[0]
    s = sp_integrate.quad(inv_m, 0, t, **opts)[0]
    nu = -sp_integrate.quad(lambda u: beta(u) * inv_m(u), 0, t, **opts)[0]
    phase = sp_integrate.quad(lambda u: beta(u) ** 2 * inv_m(u) / 2, 0, t, **opts)[0]
    return dict(s=s, beta=beta(t), nu=nu, phase_g=phase, nested=nu)


def test_constant_example():
    st_ = transform_state(MassProfile(Constant(1.0)), Constant(1.0), 1.0)
    assert (st_.s, st_.beta, st_.nu, st_.nested) == (1.0, -1.0, 0.5, 0.5)
    assert st_.phase_g == pytest.approx(1 / 6, abs=1e-16)
    q = transform_state(MassProfile(Constant(1.0)), Constant(1.0), 1.0, QUAD)
    for f in FIELDS:
        assert getattr(q, f) == pytest.approx(getattr(st_, f), abs=1e-15)


@pytest.mark.parametrize("cfg", [QuadratureConfig(), QUAD])
def test_zero_time(cfg):
    for mass, force in [(MassProfile(Constant(2.0)), Sinusoid(1, 1, 1, 2)), (TAB_MASS, Polynomial([1, 2, 3]))]:
        st_ = transform_state(mass, force, 0.0, cfg)
        assert all(getattr(st_, f) == 0.0 for f in FIELDS)


def test_sinusoid_closed_form_against_definitions():
    m, q, e0, e, w = 2.0, 1.5, 0.7, 1.2, 3.0
    mass, force = MassProfile(Constant(m)), Sinusoid(q, e0, e, w)
    for t in (0.3, 2.0, 7.5):
        st_ = transform_state(mass, force, t)
        ref = brute_force(mass, force, t)
        for f in FIELDS:
            assert getattr(st_, f) == pytest.approx(ref[f], rel=1e-11, abs=1e-12), f
        # the individual brackets as written for the cosine drive
        assert st_.beta == pytest.approx(-q * (e0 * t + e / w * math.sin(w * t)), rel=1e-14)
        assert st_.nu == pytest.approx((q / m) * (e0 * t * t / 2 - e / w**2 * math.cos(w * t) + e / w**2), rel=1e-14)


@pytest.mark.filterwarnings("ignore::scipy.integrate.IntegrationWarning")
@pytest.mark.parametrize("mass,force", [
    (MassProfile(Constant(2.0)), Polynomial([0.5, -1.0, 0.25])),
    (MassProfile(Polynomial([1.0, 0.2, 0.05])), Sinusoid(1.0, 0.5, 1.0, 2.0)),
    (TAB_MASS, Sinusoid(2.0, 1.0, 1.0, 1.0)),
    (MassProfile(Sinusoid(1.0, 2.0, 0.5, 1.5)), Tabulated(KNOTS, np.cos(KNOTS))),
])
def test_quadrature_against_brute_force(mass, force):
    for t in (0.7, 4.3):
        st_ = transform_state(mass, force, t, QUAD)
        ref = brute_force(mass, force, t)
        for f in FIELDS:
            assert getattr(st_, f) == pytest.approx(ref[f], rel=1e-9, abs=1e-11), f


@pytest.mark.parametrize("force", [Constant(1.3), Sinusoid(2.0, 1.0, 1.0, 1.0), Polynomial([1.0, -0.5, 0.1])])
def test_closed_form_matches_quadrature(force):
    mass = MassProfile(Constant(1.7))
    t = np.linspace(0, 10, 101)
    cf = transform_arrays(mass, force, t)
    qd = transform_arrays(mass, force, t, QUAD)
    for f in FIELDS:
        a, b = getattr(cf, f), getattr(qd, f)
        assert np.all(np.abs(a - b) <= np.maximum(QUAD.abs_tol, QUAD.rel_tol * np.abs(a)) + 1e-14), f


def test_nu_equals_nested():
    cases = [(TAB_MASS, Sinusoid(2.0, 1.0, 1.0, 1.0)), (MassProfile(Polynomial([1, 0.5])), Constant(-2.0))]
    for mass, force in cases:
        st_ = transform_arrays(mass, force, np.linspace(0, 10, 57), QUAD)
        tol = np.maximum(QUAD.abs_tol, QUAD.rel_tol * np.abs(st_.nu))
        assert np.all(np.abs(st_.nu - st_.nested) <= 2 * tol)


def test_negative_times_by_reflection():
    mass = MassProfile(Tabulated(KNOTS, 1 + 0.3 * np.sin(KNOTS)))
    force = Sinusoid(1.0, 0.5, 1.0, 2.0)
    st_ = transform_state(mass, force, -0.8, QUAD)
    # s = int_0^t dsigma/M is negative for t < 0
    inside = [k for k in KNOTS if -0.8 < k < 0]
    ref_s = -sp_integrate.quad(lambda u: 1 / mass(u), -0.8, 0, points=inside, epsabs=1e-15, limit=200)[0]
    assert st_.s == pytest.approx(ref_s, rel=1e-12)
    const = transform_state(MassProfile(Constant(1.0)), Constant(1.0), -1.0, QUAD)
    assert (const.s, const.beta, const.nu) == pytest.approx((-1.0, 1.0, 0.5))
    assert const.phase_g == pytest.approx(-1 / 6)


def test_range_errors():
    with pytest.raises(RangeError):
        transform_state(TAB_MASS, Constant(1.0), 11.5)
    with pytest.raises(RangeError):
        transform_state(MassProfile(Polynomial([1.0, -1.0]), domain_end=0.5), Constant(1.0), 0.6)


def test_transform_grid_examples():
    mass, force = MassProfile(Constant(1.0)), Constant(1.0)
    assert len(transform_grid(mass, force, [0.0])) == 1
    grid = transform_grid(mass, force, [0.0, 1.0, 2.0])
    for st_, t in zip(grid, [0.0, 1.0, 2.0]):
        assert (st_.s, st_.beta, st_.nu, st_.nested) == pytest.approx((t, -t, t * t / 2, t * t / 2), abs=1e-15)
        assert st_.phase_g == pytest.approx(t**3 / 6, abs=1e-15)
    with pytest.raises(ValueError):
        transform_grid(mass, force, [1.0, 0.5])


def test_transform_grid_matches_pointwise():
    mass, force = TAB_MASS, Sinusoid(1.0, 0.5, 1.0, 1.0)
    times = np.linspace(0, 2 * np.pi, 100)
    grid = transform_grid(mass, force, times, QUAD)
    for k in range(0, 100, 9):
        single = transform_state(mass, force, times[k], QUAD)
        for f in FIELDS:
            ref = getattr(single, f)
            assert abs(getattr(grid[k], f) - ref) <= 2 * max(QUAD.abs_tol, QUAD.rel_tol * abs(ref)), f


@settings(max_examples=25, deadline=None)
@given(st.floats(-3, 3).filter(lambda v: abs(v) > 1e-3), st.floats(0.1, 10))
def test_linearity_in_force(lam, t):
    mass = TAB_MASS
    base = Sinusoid(1.0, 0.5, 1.0, 1.3)
    scaled = Sinusoid(lam, 0.5, 1.0, 1.3)
    a = transform_state(mass, base, t, QUAD)
    b = transform_state(mass, scaled, t, QUAD)
    tol = lambda v: 4 * max(QUAD.abs_tol, QUAD.rel_tol * abs(v))
    for f in ("beta", "nu", "nested"):
        assert abs(getattr(b, f) - lam * getattr(a, f)) <= tol(lam * getattr(a, f))
    assert abs(b.phase_g - lam**2 * a.phase_g) <= tol(lam**2 * a.phase_g)
    assert b.s == pytest.approx(a.s, rel=1e-13)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.floats(0, 10), min_size=2, max_size=6, unique=True))
def test_s_monotone(times):
    times = sorted(times)
    for mass in (TAB_MASS, MassProfile(Polynomial([1.0, 0.3, 0.01]))):
        s = transform_arrays(mass, Constant(0.0), times, QUAD).s
        assert np.all(np.diff(s) > 0)
