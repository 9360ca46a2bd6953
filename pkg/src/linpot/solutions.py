"""Analytic solutions of  i dPsi/dt = -(1/2M(t)) d2Psi/dx2 + g1(t) x Psi  (hbar = 1).

Two families, each reached from a free-particle solution f'(y, s) by the
substitution y = x + nu(t), s = int dt/M and the phase factors
exp(-i phase_g) exp(i x beta):

* plane waves, labelled by the free momentum ``A``;
* Airy packets, labelled by the scale ``B``, whose density translates
  rigidly along x0(t) = (B^3/4) s^2 - nested.

All evaluators broadcast over array ``x`` and ``t`` and return complex128.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from .airy import airy_arrays, airy_peak_offset
from .profiles import MassProfile, TimeProfile, mass_from_dict, profile_from_dict
from .quadrature import QuadratureConfig
from .transform import transform_arrays

INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class PlaneWaveSolution:
    A: float
    mass: MassProfile
    force: TimeProfile
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)
    family = "plane"

    def __post_init__(self):
        if not math.isfinite(self.A):
            raise ValueError("A must be finite")
        if not isinstance(self.mass, MassProfile):
            raise TypeError("mass must be a MassProfile")

    def to_dict(self):
        return {"family": "plane", "A": self.A, "mass": self.mass.to_dict(), "force": self.force.to_dict()}


@dataclass(frozen=True)
class AiryPacketSolution:
    B: float
    mass: MassProfile
    force: TimeProfile
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)
    family = "airy"

    def __post_init__(self):
        if not math.isfinite(self.B) or self.B == 0:
            raise ValueError("B must be finite and non-zero")
        if not isinstance(self.mass, MassProfile):
            raise TypeError("mass must be a MassProfile")

    def to_dict(self):
        return {"family": "airy", "B": self.B, "mass": self.mass.to_dict(), "force": self.force.to_dict()}


def solution_from_dict(obj, quad=None):
    """Parse ``{"family": "plane"|"airy", "A"|"B": ..., "mass": ..., "force": ...}``."""
    if not isinstance(obj, dict):
        raise ValueError("solution must be a JSON object")
    family = obj.get("family")
    try:
        mass = mass_from_dict(obj["mass"])
        force = profile_from_dict(obj["force"])
    except KeyError as exc:
        raise ValueError(f"solution missing {exc.args[0]!r}") from None
    quad = quad if quad is not None else QuadratureConfig()
    if family == "plane":
        return PlaneWaveSolution(float(obj["A"]), mass, force, quad)
    if family == "airy":
        return AiryPacketSolution(float(obj["B"]), mass, force, quad)
    raise ValueError(f"unknown solution family {family!r}")


@dataclass(frozen=True)
class CosineDriveParams:
    """Constant mass ``m`` and drive g1(t) = q (eps0 + eps cos(omega t))."""

    m: float
    q: float
    eps0: float
    eps: float
    omega: float

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError("m must be positive")
        if not self.omega > 0:
            raise ValueError("omega must be positive")


def _grid(sol, x, t):
    x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    st = transform_arrays(sol.mass, sol.force, t, sol.quad)
    return x, st


def plane_wave_psi(sol, x, t):
    x, st = _grid(sol, x, t)
    A = sol.A
    phase = A * (x + st.nu) - 0.5 * A * A * st.s - st.phase_g + x * st.beta
    return INV_SQRT_2PI * np.exp(1j * phase)


def plane_wave_psi_cosine(p, A, x, t):
    """Cosine-drive plane wave written out in elementary functions."""
    x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    m, q, e0, e, w = p.m, p.q, p.eps0, p.eps, p.omega
    wt = w * t
    shift = (q / m) * (0.5 * e0 * t**2 - (e / w**2) * np.cos(wt) + e / w**2)
    f1 = np.exp(1j * A * (x + shift) - 1j * A * A * t / (2 * m))
    f2 = np.exp(-1j * (q / w) * (e0 * wt + e * np.sin(wt)) * x)
    f3 = np.exp(-1j * (q * q / (2 * m * w**3)) * (
        e0 * e0 * wt**3 / 3 + 2 * e0 * e * (np.sin(wt) - wt * np.cos(wt)) + e * e * (0.5 * wt - 0.25 * np.sin(2 * wt))))
    return INV_SQRT_2PI * f1 * f2 * f3


def airy_psi(sol, x, t):
    x, st = _grid(sol, x, t)
    B = sol.B
    B3 = B**3
    shifted = x + st.nested
    ai, _ = airy_arrays(B * (shifted - 0.25 * B3 * st.s**2))
    phase = 0.5 * B3 * st.s * (shifted - B3 * st.s**2 / 6.0) - st.phase_g + x * st.beta
    return ai * np.exp(1j * phase)


def airy_psi_cosine(p, B, x, t):
    """Cosine-drive Airy packet written out in elementary functions."""
    x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    m, q, e0, e, w = p.m, p.q, p.eps0, p.eps, p.omega
    wt = w * t
    B3 = B**3
    drift = q * e0 * t**2 / (2 * m) - (q * e / (m * w**2)) * np.cos(wt) + q * e / (m * w**2)
    ai, _ = airy_arrays(B * (x + drift - B3 * t**2 / (4 * m * m)))
    f1 = np.exp(1j * (B3 * t / (2 * m)) * (x + drift - B3 * t**2 / (6 * m * m)))
    f2 = np.exp(-1j * x * (q * e0 * t + (q * e / w) * np.sin(wt)))
    f3 = np.exp(-1j * (q * q / (2 * m)) * (
        e0 * e0 * t**3 / 3 + (e * e / (2 * w**3)) * (wt - 0.5 * np.sin(2 * wt))
        + (2 * e0 * e / w**3) * (np.sin(wt) - wt * np.cos(wt))))
    return ai * f1 * f2 * f3


def airy_trajectory(sol, t):
    """Reference point x0(t); the Airy argument is B (x - x0(t))."""
    t = np.asarray(t, dtype=float)
    st = transform_arrays(sol.mass, sol.force, t, sol.quad)
    out = 0.25 * sol.B**3 * st.s**2 - st.nested
    return float(out) if out.ndim == 0 else out


def density_peak(sol, t):
    """Position of the global maximum of |Psi(., t)|^2."""
    return airy_trajectory(sol, t) + airy_peak_offset() / sol.B


def cosine_solution(p, family, param, quad=None):
    """Generic-path solution object equivalent to the cosine closed forms."""
    from .profiles import Constant, Sinusoid

    mass = MassProfile(Constant(p.m))
    force = Sinusoid(p.q, p.eps0, p.eps, p.omega)
    quad = quad if quad is not None else QuadratureConfig()
    if family == "plane":
        return PlaneWaveSolution(param, mass, force, quad)
    return AiryPacketSolution(param, mass, force, quad)


def free_particle(kind, param, y, s):
    """Free solutions of i df/ds = -(1/2) d2f/dy2 for unit mass."""
    if kind == "plane":
        return INV_SQRT_2PI * np.exp(1j * (param * y - 0.5 * param * param * s))
    B3 = param**3
    ai, _ = airy_arrays(param * (y - 0.25 * B3 * s * s))
    return ai * np.exp(1j * 0.5 * B3 * s * (y - B3 * s * s / 6.0))


def reduce_check(kind, sol, x, t):
    """Undo the phase and coordinate changes and compare with the free solution.

    Returns |f - f_free| where f is Psi with exp(i x beta) and exp(-i phase_g)
    divided out, and f_free the free-particle solution at (x + nu, s).
    """
    if kind not in ("plane", "airy") or kind != sol.family:
        raise ValueError(f"kind {kind!r} does not match solution family {sol.family!r}")
    x, st = _grid(sol, x, t)
    psi = plane_wave_psi(sol, x, st.t) if kind == "plane" else airy_psi(sol, x, st.t)
    phi = psi / np.exp(1j * x * st.beta)
    f = phi / np.exp(-1j * st.phase_g)
    param = sol.A if kind == "plane" else sol.B
    deviation = np.abs(f - free_particle(kind, param, x + st.nu, st.s))
    return float(deviation) if deviation.ndim == 0 else deviation
