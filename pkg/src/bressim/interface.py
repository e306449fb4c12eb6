"""Transmission-condition solve at the interface node.

Each step the six trace values (phi, psi, omega | u, v, w at x = L0) are
treated as unknowns subject to three continuity equations and three flux
conditions,

    k1 (phi_x + psi + l omega) = k2 (u_x + v + l w),
    nu1 psi_x = nu2 v_x,
    omega_x = w_x,

with second-order one-sided stencils f_x(L0-) ~ (3 f_I - 4 f_{-h} + f_{-2h})/(2h)
and the mirrored right-sided formula.  Ordered by field pair
(psi,v), (omega,w), (phi,u) the 6x6 system is reducible (block
lower-triangular): the shear-flux row couples to the solved psi and
omega traces through the (k2-k1) terms, so the pairs are solved as three
closed-form 2x2 systems in that order.  The same solve applied to the
velocity fields enforces the time-differentiated conditions, which the
discrete state needs for heat-equation stencils and kinetic energy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularInterfaceSystem
from .grid import Grid
from .params import PhysicalParams
from .state import FieldState

__all__ = ["InterfaceTraces", "solve_interface", "solve_interface_values", "interface_matrix"]

_DET_TINY = 1e-300


@dataclass
class InterfaceTraces:
    """Left (phi, psi, omega) and right (u, v, w) traces at x = L0."""

    phi: float
    psi: float
    omega: float
    u: float
    v: float
    w: float


def _one_sided_parts(arr: np.ndarray, ii: int, h: float) -> tuple[float, float]:
    """Known parts of the one-sided derivatives at the interface.

    left:  f_x(L0-) = a*f_I + cL,  cL = (-4 f[ii-1] + f[ii-2]) / (2h)
    right: f_x(L0+) = -a*f_I + cR, cR = (4 f[ii+1] - f[ii+2]) / (2h)
    with a = 3/(2h).
    """
    cL = (-4.0 * arr[ii - 1] + arr[ii - 2]) / (2.0 * h)
    cR = (4.0 * arr[ii + 1] - arr[ii + 2]) / (2.0 * h)
    return cL, cR


def require_interface_stencil_room(g: Grid) -> None:
    """The one-sided stencils need two interior nodes on each side of the
    interface; reject grids where they would reach past the ends."""
    if g.interface_index < 2 or g.n_total - 1 - g.interface_index < 2:
        raise ValueError(
            f"grid too coarse for the interface stencils: need two nodes on each "
            f"side of x=L0, got interface_index={g.interface_index} of {g.n_total} nodes")


def solve_interface_values(trans: np.ndarray, shear: np.ndarray, longi: np.ndarray,
                           p: PhysicalParams, g: Grid) -> tuple[float, float, float]:
    """Solve the three 2x2 blocks and write the common traces in place."""
    ii, h = g.interface_index, g.h
    a = 1.5 / h

    cL, cR = _one_sided_parts(shear, ii, h)
    det = (p.nu1 + p.nu2) * a
    if abs(det) < _DET_TINY:
        raise SingularInterfaceSystem("bending-moment block is singular")
    s_i = (p.nu2 * cR - p.nu1 * cL) / det

    cL, cR = _one_sided_parts(longi, ii, h)
    det = 2.0 * a
    w_i = (cR - cL) / det

    cL, cR = _one_sided_parts(trans, ii, h)
    det = (p.k1 + p.k2) * a
    if abs(det) < _DET_TINY:
        raise SingularInterfaceSystem("shear-force block is singular")
    t_i = (p.k2 * cR - p.k1 * cL + (p.k2 - p.k1) * (s_i + p.l * w_i)) / det

    shear[ii] = s_i
    longi[ii] = w_i
    trans[ii] = t_i
    return t_i, s_i, w_i


def solve_interface(s: FieldState, p: PhysicalParams, g: Grid) -> FieldState:
    """Return a state whose displacement and velocity traces satisfy the
    transmission conditions; idempotent."""
    require_interface_stencil_room(g)
    out = s.copy()
    solve_interface_values(out.trans, out.shear, out.longi, p, g)
    solve_interface_values(out.trans_t, out.shear_t, out.longi_t, p, g)
    return out


def interface_traces(s: FieldState, g: Grid) -> InterfaceTraces:
    """The six trace values at x = L0 (left and right views share storage,
    so continuity is structural on simulator states)."""
    return InterfaceTraces(phi=float(s.phi[-1]), psi=float(s.psi[-1]), omega=float(s.omega[-1]),
                           u=float(s.u[0]), v=float(s.v[0]), w=float(s.w[0]))


def interface_matrix(p: PhysicalParams, g: Grid) -> np.ndarray:
    """The assembled 6x6 system matrix, unknowns ordered
    (psi_I, v_I, omega_I, w_I, phi_I, u_I).

    Row order: psi-continuity, moment flux, omega-continuity, axial flux,
    phi-continuity, shear flux.  Used by structural tests: the matrix is
    block lower-triangular with three nonsingular 2x2 diagonal blocks.
    """
    a = 1.5 / g.h
    l = p.l
    return np.array([
        [1.0, -1.0, 0.0, 0.0, 0.0, 0.0],
        [p.nu1 * a, p.nu2 * a, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, -1.0, 0.0, 0.0],
        [0.0, 0.0, a, a, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0, -1.0],
        [p.k1, -p.k2, l * p.k1, -l * p.k2, p.k1 * a, p.k2 * a],
    ])
