"""Semi-discrete right-hand sides of the arch-beam and straight-beam systems.

Interior nodes of each segment get 3-point central second derivatives and
2-point central first derivatives; product-rule terms use the same central
stencils at the same node with velocities taken from the current state.
Boundary, interface, and heat-Dirichlet rows are returned as zero rates
(those rows are owned by apply_dirichlet / the interface solver).

The mechanical accelerations depend only on displacements and heat fields
(never on velocities), which is what lets the explicit stepper reuse the
end-of-step acceleration; the heat rates carry all velocity coupling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Grid
from .params import PhysicalParams
from .state import FieldState, ForcingSamples, as_samples

__all__ = ["Rates", "bresse_rhs", "timoshenko_rhs", "mech_accel", "heat_rates"]


@dataclass
class Rates:
    """Accelerations of the six mechanical fields plus heat-field rates.

    trans_tt/shear_tt/longi_tt are global arrays (phi/psi/omega rows on
    the damped side, u/v/w on the undamped side); xi_t/theta_t live on
    the damped nodes.
    """

    trans_tt: np.ndarray
    shear_tt: np.ndarray
    longi_tt: np.ndarray
    xi_t: np.ndarray
    theta_t: np.ndarray


def _dx(f: np.ndarray, h: float) -> np.ndarray:
    """Central first derivative on interior nodes (len(f)-2 values)."""
    return (f[2:] - f[:-2]) / (2.0 * h)


def _dxx(f: np.ndarray, h: float) -> np.ndarray:
    """Central second derivative on interior nodes (len(f)-2 values)."""
    return (f[2:] - 2.0 * f[1:-1] + f[:-2]) / (h * h)


def mech_accel(s: FieldState, p: PhysicalParams, fs: ForcingSamples, g: Grid,
               l: float, curved: bool = True) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Accelerations at segment-interior nodes; zeros elsewhere.

    With curved=False the curvature terms are dropped entirely (the
    straight-beam system) instead of being multiplied by l=0.
    """
    h = g.h
    ii = g.interface_index
    n = g.n_total
    at = np.zeros(n)
    ash = np.zeros(n)
    al = np.zeros(n)

    # damped segment (phi, psi, omega with thermal coupling)
    P, S, W = s.phi, s.psi, s.omega
    Pm, Sm, Wm = P[1:-1], S[1:-1], W[1:-1]
    Px, Sx, Wx = _dx(P, h), _dx(S, h), _dx(W, h)
    Xim = s.xi[1:-1]
    Thx = _dx(s.theta, h)
    Xix = _dx(s.xi, h)
    if curved:
        axial1 = Wx - l * Pm                 # omega_x - l phi
        shear1 = Px + Sm + l * Wm            # phi_x + psi + l omega
        at[1:ii] = (
            p.k1 * (_dxx(P, h) + Sx + l * Wx) + l * p.sigma * axial1
            + 0.5 * p.sigma * l * Sm * Sm - l * p.alpha1 * Xim + fs.p1[1:-1]
        ) / p.rho1
        al[1:ii] = (
            p.sigma * (_dxx(W, h) - l * Px) - l * p.k1 * shear1
            + p.sigma * Sm * Sx - p.alpha1 * Xix + fs.q1[1:-1]
        ) / p.rho1
    else:
        axial1 = Wx
        shear1 = Px + Sm
        at[1:ii] = (p.k1 * (_dxx(P, h) + Sx) + fs.p1[1:-1]) / p.rho1
        al[1:ii] = (p.sigma * _dxx(W, h) + p.sigma * Sm * Sx - p.alpha1 * Xix + fs.q1[1:-1]) / p.rho1
    ash[1:ii] = (
        p.nu1 * _dxx(S, h) - p.k1 * shear1 - p.alpha2 * Thx
        - p.sigma * Sm * axial1 + p.alpha1 * Sm * Xim - 0.5 * p.sigma * Sm**3 + fs.r1[1:-1]
    ) / p.beta1

    # undamped segment (u, v, w)
    U, V, Wu = s.u, s.v, s.w
    Um, Vm, Wum = U[1:-1], V[1:-1], Wu[1:-1]
    Ux, Vx, Wux = _dx(U, h), _dx(V, h), _dx(Wu, h)
    if curved:
        axial2 = Wux - l * Um
        shear2 = Ux + Vm + l * Wum
        at[ii + 1 : -1] = (
            p.k2 * (_dxx(U, h) + Vx + l * Wux) + l * p.sigma * axial2
            + 0.5 * p.sigma * l * Vm * Vm + fs.p2[1:-1]
        ) / p.rho2
        al[ii + 1 : -1] = (
            p.sigma * (_dxx(Wu, h) - l * Ux) - l * p.k2 * shear2
            + p.sigma * Vm * Vx + fs.q2[1:-1]
        ) / p.rho2
    else:
        axial2 = Wux
        shear2 = Ux + Vm
        at[ii + 1 : -1] = (p.k2 * (_dxx(U, h) + Vx) + fs.p2[1:-1]) / p.rho2
        al[ii + 1 : -1] = (p.sigma * _dxx(Wu, h) + p.sigma * Vm * Vx + fs.q2[1:-1]) / p.rho2
    ash[ii + 1 : -1] = (
        p.nu2 * _dxx(V, h) - p.k2 * shear2
        - p.sigma * Vm * axial2 - 0.5 * p.sigma * Vm**3 + fs.r2[1:-1]
    ) / p.beta2

    return at, ash, al


def heat_rates(s: FieldState, p: PhysicalParams, fs: ForcingSamples, g: Grid,
               l: float) -> tuple[np.ndarray, np.ndarray]:
    """Forward rates for xi, theta on the damped interior nodes; zeros at ends."""
    h = g.h
    nd = g.nd
    xd = np.zeros(nd)
    td = np.zeros(nd)
    St, Wt, Pt = s.psi_t, s.omega_t, s.phi_t
    Sm, Stm, Ptm = s.psi[1:-1], St[1:-1], Pt[1:-1]
    axial_t = _dx(Wt, h) - l * Ptm            # (omega_x - l phi)_t
    xd[1:-1] = (p.mu * _dxx(s.xi, h) - p.alpha1 * axial_t - p.alpha1 * Stm * Sm + fs.h1[1:-1]) / p.gamma
    td[1:-1] = (p.lam * _dxx(s.theta, h) - p.alpha2 * _dx(St, h) + fs.h2[1:-1]) / p.delta
    return xd, td


def bresse_rhs(s: FieldState, p: PhysicalParams, f, g: Grid) -> Rates:
    """Accelerations and heat rates of the curved-beam system (curvature l)."""
    fs = as_samples(f, g)
    at, ash, al = mech_accel(s, p, fs, g, p.l, curved=True)
    xd, td = heat_rates(s, p, fs, g, p.l)
    return Rates(at, ash, al, xd, td)


def timoshenko_rhs(s: FieldState, p: PhysicalParams, f, g: Grid) -> Rates:
    """The straight-beam (l=0) limit system: every curvature term removed."""
    fs = as_samples(f, g)
    at, ash, al = mech_accel(s, p, fs, g, 0.0, curved=False)
    xd, td = heat_rates(s, p, fs, g, 0.0)
    return Rates(at, ash, al, xd, td)
