"""Two-material thermoelastic arch-beam simulator with singular-limit models."""

from ._kernels import BACKEND
from .grid import Grid, build_grid
from .params import PhysicalParams, Segment, constitutive, validate_params
from .state import FieldState, ForcingSet, apply_dirichlet, sample_initial_state
from .rhs import bresse_rhs, timoshenko_rhs
from .interface import solve_interface
from .stepping import StepControl, solve_tridiagonal, stable_dt, step_explicit
from .vonkarman import ChiScanConfig, VonKarmanState, chi_scaled_params, consistency_fields, vonkarman_step
from .diagnostics import EnergyReport, energy_balance_residual, lyapunov, stationarity_gap, total_energy, transmission_residual
from .harness import RunConfig, load_config, run_chi_scan, run_decay, run_l_limit_scan, run_simulation

__version__ = "0.1.0"
