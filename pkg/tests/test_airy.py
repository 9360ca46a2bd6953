from importlib import resources
import math

import numpy as np
import pytest

from linpot import EvaluationError, airy_ai, airy_arrays, airy_peak_offset
from linpot import airy as airy_mod

# mpmath Maclaurin series at 120 digits (scripts/gen_airy_reference.py)
AI0 = 0.3550280538878172392600632
AIP0 = -0.2588194037928067984051836
AI1 = 0.1352924163128814155241474
FIRST_ZERO = -2.338107410459767038489197
PEAK = -1.018792971647471089017325
SPOT = {
    -20.0: (-0.1764061270779846895901923, 0.8928628567364712383984099),
    -7.5: (0.3217757163806478752673285, 0.3188095066985545962100629),
    -3.0: (-0.3788142936776580743472439, 0.3145837692165988136507873),
    2.5: (0.01572592338047048999526605, -0.0262508810359032303648955),
    6.0: (0.000009947694360252889570238848, -0.00002476520039703495475418183),
    12.0: (1.393184688875360839049035e-13, -4.854736554985308462993654e-13),
    20.0: (1.69167286867054031355356e-27, -7.586391625748354960515372e-27),
}


def load_reference():
    with resources.files("linpot").joinpath("data/airy_reference.csv").open() as fh:
        return np.loadtxt(fh, delimiter=",", skiprows=1)


def test_reference_table_shape():
    ref = load_reference()
    assert ref.shape == (1001, 3)
    assert ref[0, 0] == -30.0 and ref[-1, 0] == 8.0


def test_examples():
    v = airy_ai(0.0)
    assert v.ai == pytest.approx(AI0, rel=1e-15)
    assert v.ai_prime == pytest.approx(AIP0, rel=1e-15)
    assert airy_ai(1.0).ai == pytest.approx(AI1, rel=1e-13)
    assert abs(airy_ai(FIRST_ZERO).ai) < 1e-12


@pytest.mark.parametrize("x", sorted(SPOT))
def test_spot_values(x):
    ai, aip = SPOT[x]
    v = airy_ai(x)
    assert v.ai == pytest.approx(ai, rel=1e-12)
    assert v.ai_prime == pytest.approx(aip, rel=1e-12)


def test_positive_axis_decay():
    x = np.linspace(0.0, 60.0, 3001)
    ai, _ = airy_arrays(x)
    assert np.all(ai > 0)
    assert np.all(np.diff(ai) < 0)
    big, bigp = airy_arrays(np.array([150.0, 1e4, np.inf]))
    assert np.all(big == 0.0) and np.all(bigp == 0.0)


def test_nan_rejected():
    with pytest.raises(EvaluationError):
        airy_ai(float("nan"))
    with pytest.raises(EvaluationError):
        airy_arrays(np.array([0.0, np.nan]))


def test_ode_residual(rng):
    x = rng.uniform(-20, 5, 1000)
    h = 1e-3
    f = lambda u: airy_arrays(u)[0]
    d2 = (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h)
    local = np.maximum(np.abs(f(x)), np.abs(airy_arrays(x)[1])) * (1 + np.abs(x))
    assert np.all(np.abs(d2 - x * f(x)) <= 1e-6 * local)


def test_derivative_matches_differences(rng):
    x = rng.uniform(-20, 5, 1000)
    h = 1e-5
    ai_p, ai_m = airy_arrays(x + h)[0], airy_arrays(x - h)[0]
    fd = (ai_p - ai_m) / (2 * h)
    assert np.max(np.abs(fd - airy_arrays(x)[1])) < 1e-8


@pytest.mark.parametrize("switch,branch", [(airy_mod.POS_SWITCH, airy_mod._asymptotic_pos),
                                           (airy_mod.NEG_SWITCH, airy_mod._asymptotic_neg)])
def test_branch_continuity(switch, branch):
    x = switch + np.linspace(-0.05, 0.05, 41)
    taylor = airy_mod._taylor_region(x)
    asym = branch(x)
    scale = np.max(np.abs(taylor[0])) if switch < 0 else np.abs(taylor[0])
    assert np.all(np.abs(taylor[0] - asym[0]) <= 1e-12 * scale)
    dscale = np.max(np.abs(taylor[1])) if switch < 0 else np.abs(taylor[1])
    assert np.all(np.abs(taylor[1] - asym[1]) <= 1e-12 * dscale)


def test_node_sweeps_meet_at_zero():
    ai, aip = airy_mod._positive_sweep_at_zero()
    assert ai == pytest.approx(AI0, rel=1e-13)
    assert aip == pytest.approx(AIP0, rel=1e-13)


def test_peak_offset():
    a = airy_peak_offset()
    assert abs(a - PEAK) < 1e-10
    assert abs(airy_ai(a).ai_prime) < 1e-10
    xs = np.random.default_rng(3).uniform(-10, 10, 10_000)
    assert np.all(airy_ai(a).ai >= airy_arrays(xs)[0])
