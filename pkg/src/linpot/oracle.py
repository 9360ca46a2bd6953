"""Numerical checks that do not rely on the analytic construction.

* :func:`residual` substitutes a trial wave function into the Schrodinger
  equation with fourth-order finite differences.
* :func:`evolve` propagates a sampled state with Crank-Nicolson on a uniform
  grid with Dirichlet-zero walls.
"""
from dataclasses import dataclass
import math
from pathlib import Path
import warnings

import numpy as np

from . import _kernels
from .errors import (BoundaryContaminationError, DegenerateInputError, EvaluationError,
                     StabilityError)

ZERO_EXCLUSION = 1e-8
NORM_DRIFT_LIMIT = 1e-6


@dataclass(frozen=True)
class GridSpec:
    xmin: float
    xmax: float
    nx: int

    def __post_init__(self):
        if not self.xmax > self.xmin:
            raise ValueError("xmax must exceed xmin")
        if int(self.nx) != self.nx or self.nx < 16:
            raise ValueError("nx must be an integer >= 16")

    @property
    def dx(self):
        return (self.xmax - self.xmin) / (self.nx - 1)

    @property
    def x(self):
        return np.linspace(self.xmin, self.xmax, self.nx)

    def interior(self, fraction=0.5):
        """Mask of the central ``fraction`` of the grid."""
        x = self.x
        centre = 0.5 * (self.xmin + self.xmax)
        return np.abs(x - centre) <= 0.5 * fraction * (self.xmax - self.xmin)

    def to_dict(self):
        return {"xmin": self.xmin, "xmax": self.xmax, "nx": self.nx}


@dataclass(frozen=True, eq=False)
class WaveField:
    grid: GridSpec
    t: float
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.shape != (self.grid.nx,):
            raise ValueError("values length does not match grid")
        if not np.all(np.isfinite(vals)):
            raise EvaluationError("wave field contains non-finite values")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def density(self):
        return self.values.real**2 + self.values.imag**2

    def norm(self):
        return math.sqrt(float(np.sum(self.density)) * self.grid.dx)


@dataclass(frozen=True)
class EvolveConfig:
    dt: float
    t0: float
    t1: float
    taper_fraction: float = 0.1
    n_snapshots: int = 2
    boundary: str = "dirichlet-zero"

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if not self.t1 > self.t0:
            raise ValueError("t1 must exceed t0")
        if self.dt > self.t1 - self.t0:
            raise ValueError("dt must not exceed t1 - t0")
        if not 0 < self.taper_fraction < 0.5:
            raise ValueError("taper_fraction must lie in (0, 0.5)")
        if self.n_snapshots < 1:
            raise ValueError("n_snapshots must be >= 1")
        if self.boundary != "dirichlet-zero":
            raise ValueError("only dirichlet-zero boundaries are supported")

    def snapshot_times(self):
        if self.n_snapshots == 1:
            return np.array([self.t1])
        return np.linspace(self.t0, self.t1, self.n_snapshots)


@dataclass(frozen=True)
class ResidualStats:
    max_abs: float
    max_rel: float
    mean_rel: float
    n_samples: int

    def to_dict(self):
        return {"max_abs": self.max_abs, "max_rel": self.max_rel,
                "mean_rel": self.mean_rel, "n_samples": self.n_samples}


# ---------------------------------------------------------------------------
# residual
# ---------------------------------------------------------------------------

_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
_OFFSETS = np.array([-2.0, -1.0, 0.0, 1.0, 2.0])


def residual_terms(psi, mass, force, x, t, h=1e-4):
    """Residual and its scale at points (x, t).

    Returns ``(R, scale)`` with R = i dPsi/dt + (1/2M) d2Psi/dx2 - g1 x Psi and
    scale = |Psi| + |dPsi/dt| + |d2Psi/dx2|/(2M) + |g1 x Psi|.
    """
    if not h > 0:
        raise ValueError("h must be positive")
    x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    xs = x[..., None] + h * _OFFSETS
    ts = t[..., None] + h * _OFFSETS
    along_x = np.asarray(psi(xs, np.broadcast_to(t[..., None], xs.shape)), dtype=np.complex128)
    along_t = np.asarray(psi(np.broadcast_to(x[..., None], ts.shape), ts), dtype=np.complex128)
    if not (np.all(np.isfinite(along_x)) and np.all(np.isfinite(along_t))):
        raise EvaluationError("trial wave function returned non-finite samples")
    centre = along_x[..., 2]
    dpsi_dt = along_t @ _D1 / h
    d2psi_dx2 = along_x @ _D2 / (h * h)
    m = np.asarray(mass(t), dtype=float)
    g = np.asarray(force(t), dtype=float)
    kinetic = d2psi_dx2 / (2.0 * m)
    potential = g * x * centre
    R = 1j * dpsi_dt + kinetic - potential
    scale = np.abs(centre) + np.abs(dpsi_dt) + np.abs(kinetic) + np.abs(potential)
    return R, scale, centre


def residual(psi, mass, force, x, t, h=1e-4):
    """Finite-difference residual of ``psi`` in the Schrodinger equation."""
    R, _, _ = residual_terms(psi, mass, force, x, t, h)
    return complex(R) if np.ndim(R) == 0 else R


def residual_scan(psi, mass, force, x_range, t_range, n_samples, h=1e-4, seed=0):
    """Residual statistics over seeded uniform samples of (x, t).

    Samples with |Psi| below 1e-8 of the largest sampled |Psi| are left out
    of the relative statistics (they still count towards ``max_abs``).
    Times are kept at least 2h inside the mass domain.
    """
    n_samples = int(n_samples)
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    t_lo = max(float(t_range[0]), getattr(mass, "domain_start", -math.inf) + 2 * h)
    t_hi = min(float(t_range[1]), getattr(mass, "domain_end", math.inf) - 2 * h)
    if not t_hi >= t_lo:
        raise DegenerateInputError("time range leaves no room for the finite-difference stencil")
    rng = np.random.default_rng(seed)
    x = rng.uniform(float(x_range[0]), float(x_range[1]), n_samples)
    t = rng.uniform(t_lo, t_hi, n_samples)
    R, scale, centre = residual_terms(psi, mass, force, x, t, h)
    mod = np.abs(centre)
    keep = (mod > 0) & (mod >= ZERO_EXCLUSION * mod.max())
    if not keep.any():
        raise DegenerateInputError("every sample was excluded")
    rel = np.abs(R[keep]) / scale[keep]
    return ResidualStats(float(np.abs(R).max()), float(rel.max()), float(rel.mean()), int(keep.sum()))


# ---------------------------------------------------------------------------
# Crank-Nicolson
# ---------------------------------------------------------------------------


def taper(grid, fraction):
    """Cosine window: 1 in the middle, falling to 0 over the outer ``fraction`` at each end."""
    x = grid.x
    width = fraction * (grid.xmax - grid.xmin)
    d = np.minimum(x - grid.xmin, grid.xmax - x)
    return np.where(d >= width, 1.0, 0.5 * (1.0 - np.cos(np.pi * np.clip(d, 0, width) / width)))


def windowed_field(psi, grid, t, taper_fraction=0.1):
    """Sample ``psi(x, t)`` on ``grid`` and apply :func:`taper`."""
    values = np.asarray(psi(grid.x, np.full(grid.nx, float(t))), dtype=np.complex128)
    return WaveField(grid, float(t), values * taper(grid, taper_fraction))


def _stability_warning(mass, grid, dt, times):
    m_min = float(np.min(np.asarray(mass(times), dtype=float)))
    bound = 10.0 * m_min * grid.dx**2
    if dt > bound:
        warnings.warn(f"dt={dt:g} exceeds the accuracy guideline 10*M*dx^2={bound:g}", RuntimeWarning, stacklevel=3)


def _propagate(values, grid, mass, force, t_start, dts):
    mid = t_start + np.concatenate([[0.0], np.cumsum(dts)[:-1]]) + 0.5 * dts
    masses = np.asarray(mass(mid), dtype=float) * np.ones_like(mid)
    forces = np.asarray(force(mid), dtype=float) * np.ones_like(mid)
    out = np.zeros(grid.nx, dtype=np.complex128)
    interior = np.ascontiguousarray(values[1:-1], dtype=np.complex128)
    out[1:-1] = _kernels.cn_propagate(interior, np.ascontiguousarray(grid.x[1:-1]), grid.dx, dts, masses, forces)
    return out


def cn_step(field, mass, force, dt):
    """One Crank-Nicolson step with coefficients at the midpoint t + dt/2."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    _stability_warning(mass, field.grid, dt, np.array([field.t + 0.5 * dt]))
    values = _propagate(field.values, field.grid, mass, force, field.t, np.array([float(dt)]))
    return WaveField(field.grid, field.t + dt, values)


def _segment_steps(span, dt):
    n = max(1, int(math.ceil(span / dt - 1e-9)))
    steps = np.full(n, dt)
    steps[-1] = span - dt * (n - 1)
    return steps


def evolve(initial, mass, force, cfg):
    """Propagate ``initial`` from ``cfg.t0`` to ``cfg.t1``; returns snapshots."""
    if abs(initial.t - cfg.t0) > 1e-12 * max(1.0, abs(cfg.t0)):
        raise ValueError("initial field time does not match cfg.t0")
    grid = initial.grid
    _stability_warning(mass, grid, cfg.dt, np.linspace(cfg.t0, cfg.t1, 64))
    norm0 = initial.norm()
    snaps = []
    current, t = initial.values, cfg.t0
    for target in cfg.snapshot_times():
        if target > t:
            current = _propagate(current, grid, mass, force, t, _segment_steps(target - t, cfg.dt))
            t = float(target)
        field = WaveField(grid, t, current)
        if norm0 > 0 and abs(field.norm() / norm0 - 1.0) > NORM_DRIFT_LIMIT:
            raise StabilityError(f"norm drifted by {field.norm() / norm0 - 1.0:.3e} at t={t}")
        snaps.append(field)
    return snaps


def peak_track(fields, taper_fraction=0.1):
    """(t, x_peak) per snapshot; the density maximum is refined by a parabola fit."""
    out = []
    for f in fields:
        grid, dens = f.grid, f.density
        j = int(np.argmax(dens))
        width = taper_fraction * (grid.xmax - grid.xmin)
        xj = grid.xmin + j * grid.dx
        if xj - grid.xmin < width or grid.xmax - xj < width or j == 0 or j == grid.nx - 1:
            raise BoundaryContaminationError(f"density maximum at x={xj} lies in the taper region")
        dm, d0, dp = dens[j - 1], dens[j], dens[j + 1]
        curv = dm - 2.0 * d0 + dp
        shift = 0.5 * (dm - dp) / curv if curv != 0 else 0.0
        out.append((f.t, xj + shift * grid.dx))
    return out


def interior_l2_error(field, reference, fraction=0.5):
    """Relative L2 difference on the central ``fraction`` of the grid."""
    mask = field.grid.interior(fraction)
    ref = np.asarray(reference)[mask]
    return float(np.linalg.norm(field.values[mask] - ref) / np.linalg.norm(ref))


# ---------------------------------------------------------------------------
# snapshot files
# ---------------------------------------------------------------------------


def snapshot_name(index, t):
    return f"snap_{index:06}_t{t:.6}.csv"


def write_field_csv(path, x, values):
    """CSV with header ``x,re,im,density``; floats in shortest round-trip form."""
    values = np.asarray(values, dtype=np.complex128)
    dens = values.real**2 + values.imag**2
    lines = ["x,re,im,density"]
    lines += [f"{float(a)!r},{float(b)!r},{float(c)!r},{float(d)!r}"
              for a, b, c, d in zip(x, values.real, values.imag, dens)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def write_snapshot(field, directory, index):
    path = Path(directory) / snapshot_name(index, field.t)
    write_field_csv(path, field.grid.x, field.values)
    return path
