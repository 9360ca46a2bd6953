"""Generate the Airy reference table shipped with linpot.

The values come from the two-series Maclaurin representation evaluated in
arbitrary precision (mpmath, 120 digits), cross-checked against
``mpmath.airyai``.  Run from the repository root::

    python scripts/gen_airy_reference.py

Also prints the Airy constants frozen into the test-suite.
"""
import csv
from pathlib import Path

import mpmath as mp
import numpy as np

mp.mp.dps = 120
OUT = Path(__file__).resolve().parents[1] / "src" / "linpot" / "data" / "airy_reference.csv"


def airy_series(x):
    x = mp.mpf(x)
    c1 = mp.power(3, mp.mpf(-2) / 3) / mp.gamma(mp.mpf(2) / 3)
    c2 = mp.power(3, mp.mpf(-1) / 3) / mp.gamma(mp.mpf(1) / 3)
    x3 = x**3
    eps = mp.mpf(10) ** (-(mp.mp.dps - 10))

    f, tf = mp.mpf(1), mp.mpf(1)
    g, tg = x, x
    fp, tfp = mp.mpf(0), x**2 / 2
    gp, tgp = mp.mpf(1), mp.mpf(1)
    fp += tfp
    k = 1
    while True:
        tf = tf * x3 / ((3 * k - 1) * (3 * k))
        tg = tg * x3 / ((3 * k) * (3 * k + 1))
        tgp = tgp * x3 / ((3 * k) * (3 * k - 2))
        if k >= 2:
            tfp = tfp * x3 / ((3 * k - 3) * (3 * k - 1))
            fp += tfp
        f += tf
        g += tg
        gp += tgp
        if k > 10 and max(abs(tf), abs(tg), abs(tfp), abs(tgp)) < eps:
            break
        k += 1
    return c1 * f - c2 * g, c1 * fp - c2 * gp


def main():
    xs = np.linspace(-30.0, 8.0, 1001)
    rows = []
    for x in xs:
        ai, aip = airy_series(float(x))
        ref, refp = mp.airyai(float(x)), mp.airyai(float(x), derivative=1)
        assert abs(ai - ref) < mp.mpf(10) ** -60 and abs(aip - refp) < mp.mpf(10) ** -60, x
        rows.append((repr(float(x)), mp.nstr(ai, 30, min_fixed=-1, max_fixed=-1), mp.nstr(aip, 30, min_fixed=-1, max_fixed=-1)))
    with OUT.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "ai", "ai_prime"])
        w.writerows(rows)

    # constants frozen in tests
    ai0, aip0 = airy_series(0)
    print("Ai(0)  =", mp.nstr(ai0, 25))
    print("Ai'(0) =", mp.nstr(aip0, 25))
    print("Ai(1)  =", mp.nstr(airy_series(1)[0], 25))
    zero = mp.findroot(lambda z: airy_series(z)[0], -2.338)
    print("first zero of Ai =", mp.nstr(zero, 25))
    peak = mp.findroot(lambda z: airy_series(z)[1], -1.02)
    print("argmax of Ai =", mp.nstr(peak, 25), " Ai(max) =", mp.nstr(airy_series(peak)[0], 25))
    for x in (-20.0, -7.5, -3.0, 2.5, 6.0, 12.0, 20.0):
        v = mp.airyai(x), mp.airyai(x, derivative=1)
        print(f"Ai({x}) =", mp.nstr(v[0], 25), " Ai' =", mp.nstr(v[1], 25))


if __name__ == "__main__":
    main()
