"""Explicit time stepping under a hyperbolic-parabolic step restriction.

The wave-type fields advance by velocity Verlet (positions with old
velocities plus half dt^2 acceleration; accelerations re-evaluated on the
updated, interface-reconciled positions; velocities with averaged
accelerations) and the heat fields by forward Euler, all at one global dt
bounded by both the CFL and the diffusive restriction.  Also provides the
Thomas tridiagonal solve used by the von Karman rotational-inertia
operator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonFiniteState, ZeroPivot
from .grid import Grid
from .interface import solve_interface_values
from .params import PhysicalParams
from .state import FieldState, apply_dirichlet, as_samples

__all__ = ["StepControl", "stable_dt", "step_explicit", "solve_tridiagonal"]

_PIVOT_TINY = 1e-300


@dataclass
class StepControl:
    """Time-stepping knobs.

    safety is the Courant factor, normally in (0, 1]; values above 1 are
    allowed so stability-violation experiments can be expressed.
    """

    dt: float
    t_end: float
    safety: float = 0.9
    output_stride: int = 1


def stable_dt(p: PhysicalParams, g: Grid, safety: float = 0.9, model: str = "bresse") -> float:
    """safety * min(hyperbolic, parabolic) step bound.

    Hyperbolic: h / c_max with c_max the largest wave speed
    (sqrt(k_i/rho_i), sqrt(nu_i/beta_i), sqrt(sigma/rho_i) over both
    segments; the k_i speeds are dropped for model=vonkarman, where the
    shear moduli do not appear and bending waves are limited by
    sqrt(nu_i/beta_i) through the rotational-inertia operator).
    Parabolic: h^2 / (2 max(mu/gamma, lambda/delta)).
    """
    speeds = [np.sqrt(p.nu1 / p.beta1), np.sqrt(p.nu2 / p.beta2),
              np.sqrt(p.sigma / p.rho1), np.sqrt(p.sigma / p.rho2)]
    if model != "vonkarman":
        speeds += [np.sqrt(p.k1 / p.rho1), np.sqrt(p.k2 / p.rho2)]
    c_max = max(speeds)
    dt_hyp = g.h / c_max
    dt_par = g.h * g.h / (2.0 * max(p.mu / p.gamma, p.lam / p.delta))
    return safety * min(dt_hyp, dt_par)


def step_explicit(s: FieldState, rhs_fn, p: PhysicalParams, f, g: Grid, ctl: StepControl) -> FieldState:
    """One explicit step; returns the new state (the input is untouched).

    rhs_fn is the rate-assembly operation (bresse_rhs or timoshenko_rhs).
    Raises NonFiniteState if the step produces NaN/Inf anywhere.
    """
    fs = as_samples(f, g)
    out = apply_dirichlet(s)
    solve_interface_values(out.trans, out.shear, out.longi, p, g)
    solve_interface_values(out.trans_t, out.shear_t, out.longi_t, p, g)

    dt = ctl.dt
    r0 = rhs_fn(out, p, fs, g)
    half_dt2 = 0.5 * dt * dt
    out.trans += dt * out.trans_t + half_dt2 * r0.trans_tt
    out.shear += dt * out.shear_t + half_dt2 * r0.shear_tt
    out.longi += dt * out.longi_t + half_dt2 * r0.longi_tt
    out.xi += dt * r0.xi_t
    out.theta += dt * r0.theta_t
    solve_interface_values(out.trans, out.shear, out.longi, p, g)

    r1 = rhs_fn(out, p, fs, g)
    half_dt = 0.5 * dt
    out.trans_t += half_dt * (r0.trans_tt + r1.trans_tt)
    out.shear_t += half_dt * (r0.shear_tt + r1.shear_tt)
    out.longi_t += half_dt * (r0.longi_tt + r1.longi_tt)
    solve_interface_values(out.trans_t, out.shear_t, out.longi_t, p, g)
    out.t = s.t + dt

    if not out.is_finite():
        raise NonFiniteState(step=1, t=out.t)
    return out


def solve_tridiagonal(lower: np.ndarray, diag: np.ndarray, upper: np.ndarray,
                      rhs: np.ndarray) -> np.ndarray:
    """Thomas-algorithm solve of a tridiagonal system.

    lower/upper have length n-1 (sub/super diagonal), diag and rhs length
    n.  Intended for diagonally dominant systems; raises ZeroPivot if
    elimination hits a vanishing pivot.
    """
    n = len(diag)
    if n == 0:
        return np.zeros(0)
    cp = np.empty(n - 1) if n > 1 else np.zeros(0)
    dp = np.empty(n)
    piv = diag[0]
    if abs(piv) < _PIVOT_TINY:
        raise ZeroPivot(0)
    dp[0] = rhs[0] / piv
    if n > 1:
        cp[0] = upper[0] / piv
    for i in range(1, n):
        piv = diag[i] - lower[i - 1] * cp[i - 1]
        if abs(piv) < _PIVOT_TINY:
            raise ZeroPivot(i)
        dp[i] = (rhs[i] - lower[i - 1] * dp[i - 1]) / piv
        if i < n - 1:
            cp[i] = upper[i] / piv
    x = np.empty(n)
    x[-1] = dp[-1]
    for i in range(n - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return x
