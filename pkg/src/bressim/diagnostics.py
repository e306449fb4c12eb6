"""Analysis-level quantities: energy split, dissipation, balance residual,
Lyapunov value, transmission residuals, stationarity gap.

All norms are trapezoidal on the grid; derivatives are central with
second-order one-sided stencils at segment ends.  The transmission
residuals deliberately use 4-point one-sided stencils, different from the
interface solver's 3-point ones, so they measure real error rather than
the solver's own constraint.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import HeatSourcePresent, InsufficientSamples
from .grid import Grid
from .params import PhysicalParams
from .state import FieldState, as_samples

__all__ = [
    "EnergyReport", "TrajectorySample", "TransmissionResidual",
    "total_energy", "forcing_power", "heat_source_power", "forcing_displacement_product",
    "lyapunov", "stationarity_gap", "transmission_residual", "energy_balance_residual",
]


def _trapz(y: np.ndarray, h: float) -> float:
    return float(np.trapezoid(y, dx=h))


def _ddx(f: np.ndarray, h: float) -> np.ndarray:
    """Central derivative, 2nd-order one-sided at the segment ends."""
    return np.gradient(f, h, edge_order=2)


@dataclass
class EnergyReport:
    kinetic: float
    thermal: float
    potential: float
    total: float
    dissipation_rate: float
    lyapunov: Optional[float] = None
    balance_residual: Optional[float] = None


def total_energy(s: FieldState, p: PhysicalParams, g: Grid, f=None) -> EnergyReport:
    """Energy split of a state: kinetic + thermal + potential = total.

    potential = (1/2) [ k_i ||phi_x+psi+l omega||^2 + sigma ||omega_x - l phi
    + psi^2/2||^2 + nu_i ||psi_x||^2 ] summed over both segments;
    dissipation_rate = mu ||xi_x||^2 + lambda ||theta_x||^2.  When a
    forcing with zero heat sources is supplied, the Lyapunov value
    E - (P, Phi) is filled in as well.
    """
    h, l = g.h, p.l
    kinetic = 0.5 * (
        _trapz(p.rho1 * s.phi_t**2 + p.beta1 * s.psi_t**2 + p.rho1 * s.omega_t**2, h)
        + _trapz(p.rho2 * s.u_t**2 + p.beta2 * s.v_t**2 + p.rho2 * s.w_t**2, h)
    )
    thermal = 0.5 * _trapz(p.gamma * s.xi**2 + p.delta * s.theta**2, h)

    phix, psix, omegax = _ddx(s.phi, h), _ddx(s.psi, h), _ddx(s.omega, h)
    ux, vx, wx = _ddx(s.u, h), _ddx(s.v, h), _ddx(s.w, h)
    shear1 = phix + s.psi + l * s.omega
    axial1 = omegax - l * s.phi + 0.5 * s.psi**2
    shear2 = ux + s.v + l * s.w
    axial2 = wx - l * s.u + 0.5 * s.v**2
    potential = 0.5 * (
        _trapz(p.k1 * shear1**2 + p.sigma * axial1**2 + p.nu1 * psix**2, h)
        + _trapz(p.k2 * shear2**2 + p.sigma * axial2**2 + p.nu2 * vx**2, h)
    )
    dissipation = _trapz(p.mu * _ddx(s.xi, h) ** 2 + p.lam * _ddx(s.theta, h) ** 2, h)

    lyap = None
    if f is not None:
        fs = as_samples(f, g)
        if fs.heat_free:
            lyap = kinetic + thermal + potential - forcing_displacement_product(s, fs, g)
    return EnergyReport(
        kinetic=kinetic, thermal=thermal, potential=potential,
        total=kinetic + thermal + potential, dissipation_rate=dissipation, lyapunov=lyap,
    )


def forcing_power(s: FieldState, f, g: Grid) -> float:
    """(P, Phi_t): work rate of the mechanical loads."""
    fs = as_samples(f, g)
    return (
        _trapz(fs.p1 * s.phi_t + fs.r1 * s.psi_t + fs.q1 * s.omega_t, g.h)
        + _trapz(fs.p2 * s.u_t + fs.r2 * s.v_t + fs.q2 * s.w_t, g.h)
    )


def heat_source_power(s: FieldState, f, g: Grid) -> float:
    """(G, Theta): work rate of the heat sources."""
    fs = as_samples(f, g)
    return _trapz(fs.h1 * s.xi + fs.h2 * s.theta, g.h)


def forcing_displacement_product(s: FieldState, f, g: Grid) -> float:
    """(P, Phi): mechanical loads against displacements."""
    fs = as_samples(f, g)
    return (
        _trapz(fs.p1 * s.phi + fs.r1 * s.psi + fs.q1 * s.omega, g.h)
        + _trapz(fs.p2 * s.u + fs.r2 * s.v + fs.q2 * s.w, g.h)
    )


def lyapunov(s: FieldState, p: PhysicalParams, f, g: Grid) -> float:
    """L = E - (P, Phi); requires h1 = h2 = 0 (else the quantity is not a
    Lyapunov function and HeatSourcePresent is raised)."""
    fs = as_samples(f, g)
    if not fs.heat_free:
        raise HeatSourcePresent()
    rep = total_energy(s, p, g)
    return rep.total - forcing_displacement_product(s, fs, g)


def stationarity_gap(s: FieldState, p: PhysicalParams, g: Grid) -> float:
    """Weighted norm of velocities and temperatures; vanishes exactly on
    stationary states.  Identity: gap^2 = 2 (kinetic + thermal)."""
    h = g.h
    kinetic = 0.5 * (
        _trapz(p.rho1 * s.phi_t**2 + p.beta1 * s.psi_t**2 + p.rho1 * s.omega_t**2, h)
        + _trapz(p.rho2 * s.u_t**2 + p.beta2 * s.v_t**2 + p.rho2 * s.w_t**2, h)
    )
    thermal = 0.5 * _trapz(p.gamma * s.xi**2 + p.delta * s.theta**2, h)
    return float(np.sqrt(2.0 * (kinetic + thermal)))


# --- transmission residuals ----------------------------------------------------


@dataclass
class TransmissionResidual:
    """Continuity gaps and flux jumps at the interface, by independent stencils."""

    cont_trans: float
    cont_shear: float
    cont_longi: float
    flux_shear: float   # |k1(phi_x+psi+l omega) - k2(u_x+v+l w)|
    flux_moment: float  # |nu1 psi_x - nu2 v_x|
    flux_axial: float   # |omega_x - w_x|

    def max_continuity(self) -> float:
        return max(self.cont_trans, self.cont_shear, self.cont_longi)

    def max_flux(self) -> float:
        return max(self.flux_shear, self.flux_moment, self.flux_axial)


def _dx_left4(f: np.ndarray, h: float) -> float:
    """4-point one-sided derivative at the last entry (3rd order)."""
    return (11.0 * f[-1] - 18.0 * f[-2] + 9.0 * f[-3] - 2.0 * f[-4]) / (6.0 * h)


def _dx_right4(f: np.ndarray, h: float) -> float:
    """4-point one-sided derivative at the first entry (3rd order)."""
    return (-11.0 * f[0] + 18.0 * f[1] - 9.0 * f[2] + 2.0 * f[3]) / (6.0 * h)


def transmission_residual(s, p: PhysicalParams, g: Grid) -> TransmissionResidual:
    """Evaluate the six transmission conditions on a state.

    Accepts a FieldState or any object with per-segment arrays
    phi/psi/omega/u/v/w (duck-typed, so manufactured two-sided traces can
    be checked too; in a FieldState the interface node is shared and the
    continuity rows are structurally zero).
    """
    h, l = g.h, p.l
    phi, psi, omega = np.asarray(s.phi, float), np.asarray(s.psi, float), np.asarray(s.omega, float)
    u, v, w = np.asarray(s.u, float), np.asarray(s.v, float), np.asarray(s.w, float)
    phx, psx, omx = _dx_left4(phi, h), _dx_left4(psi, h), _dx_left4(omega, h)
    ux, vx, wx = _dx_right4(u, h), _dx_right4(v, h), _dx_right4(w, h)
    return TransmissionResidual(
        cont_trans=abs(float(phi[-1] - u[0])),
        cont_shear=abs(float(psi[-1] - v[0])),
        cont_longi=abs(float(omega[-1] - w[0])),
        flux_shear=abs(p.k1 * (phx + psi[-1] + l * omega[-1]) - p.k2 * (ux + v[0] + l * w[0])),
        flux_moment=abs(p.nu1 * psx - p.nu2 * vx),
        flux_axial=abs(omx - wx),
    )


# --- energy balance along a trajectory -----------------------------------------


@dataclass
class TrajectorySample:
    """One output sample: energy report plus instantaneous source powers."""

    t: float
    energy: EnergyReport
    forcing_power: float
    heat_power: float


def energy_balance_residual(samples: Sequence[TrajectorySample]) -> np.ndarray:
    """Residual history of the energy identity, normalized by max(E(0), 1).

    r(T) = E(T) + int_0^T dissipation dt - E(0) - int_0^T (P, Phi_t) dt
           - int_0^T (G, Theta) dt,
    with all time integrals trapezoidal over the recorded samples.
    """
    if len(samples) < 2:
        raise InsufficientSamples(len(samples))
    t = np.array([smp.t for smp in samples])
    E = np.array([smp.energy.total for smp in samples])
    D = np.array([smp.energy.dissipation_rate for smp in samples])
    PW = np.array([smp.forcing_power for smp in samples])
    GW = np.array([smp.heat_power for smp in samples])
    dt = np.diff(t)
    cum = lambda y: np.concatenate(([0.0], np.cumsum(0.5 * dt * (y[1:] + y[:-1]))))
    r = E + cum(D) - E[0] - cum(PW) - cum(GW)
    return r / max(E[0], 1.0)
