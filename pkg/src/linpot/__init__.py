"""Exact solutions of the Schrodinger equation with time-dependent mass in a
time-dependent linear potential, plus numerical cross-checks."""
from ._backend import BACKEND
from .airy import AiryValue, airy_ai, airy_arrays, airy_peak_offset
from .errors import (BoundaryContaminationError, ConvergenceError, DegenerateInputError, EvaluationError,
                     LinpotError, RangeError, StabilityError)
from .oracle import (EvolveConfig, GridSpec, ResidualStats, WaveField, cn_step, evolve, interior_l2_error,
                     peak_track, residual, residual_scan, taper, windowed_field)
from .profiles import (Constant, MassProfile, Polynomial, Sinusoid, Tabulated, TimeProfile, eval_profile,
                       mass_from_dict, profile_from_dict)
from .quadrature import QuadratureConfig, integrate
from .solutions import (AiryPacketSolution, CosineDriveParams, PlaneWaveSolution, airy_psi, airy_psi_cosine,
                        airy_trajectory, cosine_solution, density_peak, plane_wave_psi, plane_wave_psi_cosine,
                        reduce_check, solution_from_dict)
from .transform import TransformState, transform_arrays, transform_grid, transform_state

__version__ = "0.1.0"
