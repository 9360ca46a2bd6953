import json
import math

import numpy as np
import pytest

from linpot import (Constant, MassProfile, Polynomial, RangeError, Sinusoid, Tabulated, eval_profile,
                    mass_from_dict, profile_from_dict)


def test_eval_examples():
    assert eval_profile(Constant(2.0), 7.0) == 2.0
    assert eval_profile(Sinusoid(q=1, eps0=1, eps=0, omega=1), 3.0) == 1.0
    assert eval_profile(Polynomial([0, 1]), 0.5) == 0.5


def test_sinusoid_requires_positive_omega():
    with pytest.raises(ValueError):
        Sinusoid(1, 1, 1, 0.0)


def test_tabulated_validation():
    with pytest.raises(ValueError):
        Tabulated([0, 1, 2], [1, 1, 1])
    with pytest.raises(ValueError):
        Tabulated([0, 1, 1, 2], [1, 1, 1, 1])
    with pytest.raises(ValueError):
        Tabulated([0, 1, 2, 3], [1, np.nan, 1, 1])
    with pytest.raises(ValueError):
        Polynomial([1.0, np.inf])


def test_tabulated_range_and_interpolation():
    knots = np.linspace(0, 3, 31)
    p = Tabulated(knots, knots**3)
    with pytest.raises(RangeError):
        p(3.5)
    with pytest.raises(RangeError):
        eval_profile(p, -0.1)
    # natural spline: exact at knots, C2 across them
    assert np.allclose(p(knots), knots**3, atol=1e-12)
    d2 = p.spline.derivative(2)
    assert abs(d2(knots[0])) < 1e-12 and abs(d2(knots[-1])) < 1e-12
    for k in knots[1:-1]:
        assert abs(d2(k - 1e-9) - d2(k + 1e-9)) < 1e-5


def test_mass_positivity():
    with pytest.raises(ValueError):
        MassProfile(Constant(0.0))
    with pytest.raises(ValueError):
        MassProfile(Polynomial([1.0, -1.0]))  # zero at t = 1
    m = MassProfile(Polynomial([1.0, -1.0]), domain_end=0.9)
    assert m.domain_end == 0.9
    with pytest.raises(ValueError):
        MassProfile(Polynomial([1.0, -1.0]), domain_end=1.5)
    with pytest.raises(ValueError):
        # dips below zero between samples only near t=1: caught via critical points
        MassProfile(Polynomial([1.0, -2.0, 1.0 - 1e-12]), domain_end=2.0)
    knots = np.linspace(0, 10, 401)
    MassProfile(Tabulated(knots, 1 + 0.3 * np.sin(knots)))
    with pytest.raises(ValueError):
        MassProfile(Tabulated(knots, 0.2 + np.sin(knots)))
    assert math.isinf(MassProfile(Sinusoid(1, 2, 1, 1)).domain_end)
    with pytest.raises(ValueError):
        MassProfile(Sinusoid(1, 1, 1, 1))


def test_json_round_trip():
    objs = [
        {"kind": "constant", "c": 2.5},
        {"kind": "sinusoid", "q": 1.0, "eps0": 0.5, "eps": 2.0, "omega": 3.0},
        {"kind": "polynomial", "coeffs": [1.0, 0.0, 0.25]},
        {"kind": "tabulated", "knots": [0.0, 1.0, 2.0, 3.0], "values": [1.0, 2.0, 1.5, 1.0]},
    ]
    for obj in objs:
        p = profile_from_dict(json.loads(json.dumps(obj)))
        assert p.to_dict() == obj
        assert profile_from_dict(p.to_dict()) == p
    m = mass_from_dict({"kind": "polynomial", "coeffs": [1.0, -1.0], "domain_end": 0.5})
    assert mass_from_dict(m.to_dict()) == m
    with pytest.raises(ValueError):
        profile_from_dict({"kind": "exponential"})
    with pytest.raises(ValueError):
        profile_from_dict({"kind": "sinusoid", "q": 1})
