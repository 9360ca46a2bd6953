"""Real functions of time used as mass M(t) and force coefficient g1(t)."""
from dataclasses import dataclass, field
import math
from typing import ClassVar

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import RangeError


class TimeProfile:
    """Base class; subclasses are frozen dataclasses evaluated with ``p(t)``."""

    kind: ClassVar[str]

    def __call__(self, t):
        raise NotImplementedError

    def breakpoints(self):
        """Times where the profile is less smooth (quadrature panel edges)."""
        return ()

    def to_dict(self):
        raise NotImplementedError


def _finite(values, what):
    arr = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what} must be finite")
    return arr


@dataclass(frozen=True)
class Constant(TimeProfile):
    c: float
    kind: ClassVar[str] = "constant"

    def __post_init__(self):
        _finite(self.c, "c")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.full(t.shape, float(self.c))
        return out if out.ndim else float(out)

    def to_dict(self):
        return {"kind": self.kind, "c": self.c}


@dataclass(frozen=True)
class Sinusoid(TimeProfile):
    """q * (eps0 + eps * cos(omega t))."""

    q: float
    eps0: float
    eps: float
    omega: float
    kind: ClassVar[str] = "sinusoid"

    def __post_init__(self):
        _finite([self.q, self.eps0, self.eps, self.omega], "sinusoid parameters")
        if not self.omega > 0:
            raise ValueError("Sinusoid requires omega > 0")

    def __call__(self, t):
        return self.q * (self.eps0 + self.eps * np.cos(self.omega * np.asarray(t, dtype=float)))

    def to_dict(self):
        return {"kind": self.kind, "q": self.q, "eps0": self.eps0, "eps": self.eps, "omega": self.omega}


@dataclass(frozen=True)
class Polynomial(TimeProfile):
    """Coefficients in ascending powers of t."""

    coeffs: tuple
    kind: ClassVar[str] = "polynomial"

    def __post_init__(self):
        coeffs = tuple(float(c) for c in _finite(self.coeffs, "coeffs").ravel())
        if not coeffs:
            raise ValueError("Polynomial needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def poly(self):
        return np.polynomial.Polynomial(self.coeffs)

    def __call__(self, t):
        return np.polynomial.polynomial.polyval(np.asarray(t, dtype=float), self.coeffs)

    def to_dict(self):
        return {"kind": self.kind, "coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class Tabulated(TimeProfile):
    """Natural cubic spline through ``(knots, values)``."""

    knots: tuple
    values: tuple
    _spline: CubicSpline = field(init=False, repr=False, compare=False)
    kind: ClassVar[str] = "tabulated"

    def __post_init__(self):
        knots = _finite(self.knots, "knots").ravel()
        values = _finite(self.values, "values").ravel()
        if knots.size < 4:
            raise ValueError("Tabulated requires at least 4 knots")
        if knots.size != values.size:
            raise ValueError("knots and values differ in length")
        if np.any(np.diff(knots) <= 0):
            raise ValueError("knots must be strictly increasing")
        object.__setattr__(self, "knots", tuple(knots.tolist()))
        object.__setattr__(self, "values", tuple(values.tolist()))
        object.__setattr__(self, "_spline", CubicSpline(knots, values, bc_type="natural", extrapolate=False))

    @property
    def spline(self):
        return self._spline

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        lo, hi = self.knots[0], self.knots[-1]
        if np.any((t < lo) | (t > hi)) or np.any(np.isnan(t)):
            raise RangeError(f"t outside tabulated range [{lo}, {hi}]")
        out = self._spline(t)
        return out if out.ndim else float(out)

    def breakpoints(self):
        return self.knots

    def to_dict(self):
        return {"kind": self.kind, "knots": list(self.knots), "values": list(self.values)}


def eval_profile(p, t):
    """Evaluate ``p`` at a scalar time."""
    t = float(t)
    if not math.isfinite(t):
        raise RangeError("t must be finite")
    return float(p(t))


_KINDS = {cls.kind: cls for cls in (Constant, Sinusoid, Polynomial, Tabulated)}
_FIELDS = {
    "constant": ("c",),
    "sinusoid": ("q", "eps0", "eps", "omega"),
    "polynomial": ("coeffs",),
    "tabulated": ("knots", "values"),
}


def profile_from_dict(obj):
    """Build a profile from ``{"kind": ..., <parameters>}``."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("profile object must be a mapping with a 'kind' key")
    kind = obj["kind"]
    if kind not in _KINDS:
        raise ValueError(f"unknown profile kind {kind!r}")
    try:
        kwargs = {name: obj[name] for name in _FIELDS[kind]}
    except KeyError as exc:
        raise ValueError(f"{kind} profile missing field {exc.args[0]!r}") from None
    return _KINDS[kind](**kwargs)


# ---------------------------------------------------------------------------
# mass profiles
# ---------------------------------------------------------------------------

SAMPLES_PER_UNIT = 10_000


def _minimum_on(profile, lo, hi):
    """Minimum of ``profile`` on the finite interval [lo, hi]."""
    n = max(2, int(math.ceil((hi - lo) * SAMPLES_PER_UNIT)) + 1)
    candidates = [np.linspace(lo, hi, n)]
    if isinstance(profile, Polynomial):
        crit = profile.poly.deriv().roots() if len(profile.coeffs) > 2 else np.array([])
        candidates.append(np.real(crit[np.isreal(crit)]))
    elif isinstance(profile, Tabulated):
        candidates.append(profile.spline.derivative().roots(extrapolate=False))
    pts = np.concatenate(candidates)
    pts = pts[(pts >= lo) & (pts <= hi)]
    return float(np.min(profile(pts)))


def _polynomial_positive_halfline(poly):
    """True when ``poly > 0`` on [0, inf) (checked through its real roots)."""
    if poly(0.0) <= 0:
        return False
    coeffs = np.trim_zeros(np.asarray(poly.coef), "b")
    if coeffs.size > 1 and coeffs[-1] < 0:
        return False
    if coeffs.size <= 1:
        return True
    roots = np.polynomial.Polynomial(coeffs).roots()
    real = np.real(roots[np.abs(np.imag(roots)) <= 1e-12 * np.maximum(1.0, np.abs(roots))])
    return not np.any(real >= 0)


@dataclass(frozen=True)
class MassProfile:
    """A :class:`TimeProfile` certified positive on ``[domain_start, domain_end]``.

    Defaults: constant and sinusoid masses that are positive everywhere get the
    whole real line; polynomials get ``[0, inf)`` when that can be certified
    from their roots; tabulated masses get their knot range.
    """

    profile: TimeProfile
    domain_end: float = None
    domain_start: float = None

    def __post_init__(self):
        p = self.profile
        start, end = self.domain_start, self.domain_end
        if isinstance(p, Constant):
            if not p.c > 0:
                raise ValueError("mass must be positive")
            start = -math.inf if start is None else start
            end = math.inf if end is None else end
        elif isinstance(p, Sinusoid):
            lowest = p.q * p.eps0 - abs(p.q * p.eps)
            if lowest > 0:
                start = -math.inf if start is None else start
                end = math.inf if end is None else end
            else:
                start = 0.0 if start is None else start
                if end is None:
                    raise ValueError("sinusoidal mass reaches non-positive values; give domain_end")
                if _minimum_on(p, start, end) <= 0:
                    raise ValueError("mass must be positive on its domain")
        elif isinstance(p, Polynomial):
            start = 0.0 if start is None else start
            if end is None:
                if not _polynomial_positive_halfline(p.poly):
                    raise ValueError("polynomial mass is not positive on [0, inf); give domain_end")
                end = math.inf
                if start < 0 and _minimum_on(p, start, 0.0) <= 0:
                    raise ValueError("mass must be positive on its domain")
            elif _minimum_on(p, start, end) <= 0:
                raise ValueError("mass must be positive on its domain")
        elif isinstance(p, Tabulated):
            start = p.knots[0] if start is None else start
            end = p.knots[-1] if end is None else end
            if start < p.knots[0] or end > p.knots[-1]:
                raise RangeError("mass domain exceeds tabulated range")
            if _minimum_on(p, start, end) <= 0:
                raise ValueError("mass must be positive on its domain")
        else:
            raise TypeError(f"unsupported profile {type(p).__name__}")
        if not start <= 0.0 <= end:
            raise RangeError("mass domain must contain t = 0")
        object.__setattr__(self, "domain_start", float(start))
        object.__setattr__(self, "domain_end", float(end))

    def __call__(self, t):
        return self.profile(t)

    def check_times(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(np.isnan(t)) or np.any(t < self.domain_start) or np.any(t > self.domain_end):
            raise RangeError(f"t outside mass domain [{self.domain_start}, {self.domain_end}]")

    def to_dict(self):
        out = self.profile.to_dict()
        for key in ("domain_start", "domain_end"):
            value = getattr(self, key)
            if math.isfinite(value):
                out[key] = value
        return out


def mass_from_dict(obj):
    profile = profile_from_dict(obj)
    return MassProfile(profile, domain_end=obj.get("domain_end"), domain_start=obj.get("domain_start"))
