"""Command-line front end: ``linpot eval|residual|evolve``.

Exit codes: 0 success/pass, 1 check failed, 2 configuration error,
3 numerical error, 4 stability error.
"""
import argparse
from dataclasses import dataclass
import json
import logging
import math
from pathlib import Path
import sys
import warnings

import numpy as np

from .errors import BoundaryContaminationError, LinpotError, StabilityError
from .oracle import (EvolveConfig, GridSpec, WaveField, evolve, peak_track, residual_scan, windowed_field,
                     write_snapshot)
from .quadrature import QuadratureConfig
from .solutions import (AiryPacketSolution, airy_psi, airy_trajectory, density_peak, plane_wave_psi,
                        solution_from_dict)

log = logging.getLogger("linpot")

EXIT_OK, EXIT_CHECK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_STABILITY = 0, 1, 2, 3, 4


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    solution: object
    grid: GridSpec
    t0: float
    t1: float
    n_snapshots: int
    oracle: dict
    quad: QuadratureConfig
    seed: int

    def snapshot_times(self):
        if self.n_snapshots == 1:
            return np.array([self.t0])
        return np.linspace(self.t0, self.t1, self.n_snapshots)

    def evolve_config(self):
        if not self.oracle:
            raise ConfigError("config has no 'oracle' section")
        try:
            return EvolveConfig(dt=float(self.oracle["dt"]), t0=self.t0, t1=self.t1,
                                taper_fraction=float(self.oracle.get("taper_fraction", 0.1)),
                                n_snapshots=self.n_snapshots)
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"invalid oracle section: {exc}") from None


def load_config(path):
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON: {exc}") from None
    try:
        quad = QuadratureConfig.from_dict(raw.get("quad", {}))
        solution = solution_from_dict(raw["solution"], quad)
        g = raw["grid"]
        grid = GridSpec(float(g["xmin"]), float(g["xmax"]), int(g["nx"]))
        times = raw.get("times", {"t0": 0.0, "t1": 0.0, "n_snapshots": 1})
        t0 = float(times["t0"])
        t1 = float(times.get("t1", t0))
        n = int(times.get("n_snapshots", 1))
        if n < 1 or t1 < t0 or not (math.isfinite(t0) and math.isfinite(t1)):
            raise ValueError("times need t1 >= t0 and n_snapshots >= 1")
        seed = int(raw.get("seed", 0))
        oracle = raw.get("oracle") or {}
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ConfigError(f"invalid config: {exc}") from None
    return RunConfig(solution, grid, t0, t1, n, oracle, quad, seed)


def _psi(sol):
    if sol.family == "plane":
        return lambda x, t: plane_wave_psi(sol, x, t)
    return lambda x, t: airy_psi(sol, x, t)


def cmd_eval(cfg, out):
    out.mkdir(parents=True, exist_ok=True)
    psi = _psi(cfg.solution)
    x = cfg.grid.x
    for k, t in enumerate(cfg.snapshot_times()):
        values = psi(x, np.full(x.shape, t))
        write_snapshot(WaveField(cfg.grid, float(t), values), out, k)
    return EXIT_OK


def cmd_residual(cfg, samples, h, tol, seed, perturb):
    base = _psi(cfg.solution)
    psi = base if not perturb else (lambda x, t: base(x, t) * np.exp(1j * perturb * np.asarray(x) ** 2))
    sol = cfg.solution
    stats = residual_scan(psi, sol.mass, sol.force, (cfg.grid.xmin, cfg.grid.xmax), (cfg.t0, cfg.t1),
                          samples, h, seed)
    print(json.dumps(stats.to_dict()))
    return EXIT_OK if stats.max_rel < tol else EXIT_CHECK


def cmd_evolve(cfg, out):
    sol = cfg.solution
    if not isinstance(sol, AiryPacketSolution):
        raise ConfigError("evolve tracks an Airy packet; use an 'airy' solution")
    ecfg = cfg.evolve_config()
    out.mkdir(parents=True, exist_ok=True)
    initial = windowed_field(_psi(sol), cfg.grid, ecfg.t0, ecfg.taper_fraction)
    snaps = evolve(initial, sol.mass, sol.force, ecfg)
    track = peak_track(snaps, ecfg.taper_fraction)
    for k, f in enumerate(snaps):
        write_snapshot(f, out, k)
    lines = ["t,x_peak,x0_analytic,x_peak_analytic"]
    for t, xp in track:
        lines.append(f"{float(t)!r},{float(xp)!r},{float(airy_trajectory(sol, t))!r},{float(density_peak(sol, t))!r}")
    (out / "trajectory.csv").write_text("\n".join(lines) + "\n", encoding="ascii")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="linpot", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="JSON run configuration")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
        return p

    p = common(sub.add_parser("eval", help="tabulate the analytic solution on the grid"))
    p.add_argument("--out", required=True, help="output directory for snapshot CSVs")

    p = common(sub.add_parser("residual", help="finite-difference residual scan"))
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--h", type=float, default=1e-4)
    p.add_argument("--tol", type=float, default=1e-5)
    p.add_argument("--perturb", type=float, default=0.0, help=argparse.SUPPRESS)
    p.add_argument("--out", default=None, help="ignored; accepted for uniformity")

    p = common(sub.add_parser("evolve", help="Crank-Nicolson propagation and peak tracking"))
    p.add_argument("--out", required=True, help="output directory")
    return parser


def main(argv=None):
    logging.basicConfig(stream=sys.stderr, format="linpot: %(levelname)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = load_config(args.config)
        if args.command == "residual":
            if args.samples < 1:
                raise ConfigError("--samples must be >= 1")
            if not args.h > 0 or not args.tol > 0:
                raise ConfigError("--h and --tol must be positive")
        seed = cfg.seed if args.seed is None else args.seed
    except ConfigError as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            try:
                if args.command == "eval":
                    return cmd_eval(cfg, Path(args.out))
                if args.command == "residual":
                    return cmd_residual(cfg, args.samples, args.h, args.tol, seed, args.perturb)
                return cmd_evolve(cfg, Path(args.out))
            finally:
                for w in caught:
                    log.warning("%s", w.message)
    except ConfigError as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    except (StabilityError, BoundaryContaminationError) as exc:
        log.error("stability: %s", exc)
        return EXIT_STABILITY
    except (LinpotError, ArithmeticError, ValueError) as exc:
        log.error("numerical failure: %s", exc)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
