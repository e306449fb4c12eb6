"""Pure-numpy stepping kernels (fallback backend).

Semantics are the documented single-step operations applied nsteps times
with the end-of-step acceleration reused as the next step's start-of-step
acceleration (accelerations do not depend on velocities, so the reuse is
exact).  The compiled backend mirrors these loops in C.
"""

from __future__ import annotations

import numpy as np

from ..interface import solve_interface_values
from ..rhs import heat_rates, mech_accel
from ..state import FieldState
from ..vonkarman import (
    VonKarmanState,
    longitudinal_accel,
    transversal_accel,
    vk_heat_rates,
    vk_operators,
)

NAME = "python"


def _finite(arrays) -> bool:
    return all(np.isfinite(a).all() for a in arrays)


def advance_bresse(s: FieldState, p, fs, g, dt: float, nsteps: int, curved: bool = True) -> int:
    """Advance nsteps in place; returns -1, or the 1-based offset of the
    step at which a non-finite value was detected (checked at block end)."""
    l = p.l if curved else 0.0
    for arr in (s.trans, s.shear, s.longi, s.trans_t, s.shear_t, s.longi_t):
        arr[0] = 0.0
        arr[-1] = 0.0
    s.xi[0] = s.xi[-1] = 0.0
    s.theta[0] = s.theta[-1] = 0.0
    solve_interface_values(s.trans, s.shear, s.longi, p, g)
    solve_interface_values(s.trans_t, s.shear_t, s.longi_t, p, g)

    half_dt = 0.5 * dt
    half_dt2 = 0.5 * dt * dt
    with np.errstate(all="ignore"):
        at, ash, al = mech_accel(s, p, fs, g, l, curved)
        for _ in range(nsteps):
            hx, ht = heat_rates(s, p, fs, g, l)
            s.trans += dt * s.trans_t + half_dt2 * at
            s.shear += dt * s.shear_t + half_dt2 * ash
            s.longi += dt * s.longi_t + half_dt2 * al
            s.xi += dt * hx
            s.theta += dt * ht
            solve_interface_values(s.trans, s.shear, s.longi, p, g)
            at2, ash2, al2 = mech_accel(s, p, fs, g, l, curved)
            s.trans_t += half_dt * (at + at2)
            s.shear_t += half_dt * (ash + ash2)
            s.longi_t += half_dt * (al + al2)
            solve_interface_values(s.trans_t, s.shear_t, s.longi_t, p, g)
            at, ash, al = at2, ash2, al2
    if not _finite(s.arrays()):
        return nsteps
    return -1


def advance_vonkarman(s: VonKarmanState, p, fs, g, dt: float, nsteps: int, ops=None) -> int:
    """Advance the limit model nsteps in place; same return convention."""
    if ops is None:
        ops = vk_operators(p, g)
    half_dt = 0.5 * dt
    half_dt2 = 0.5 * dt * dt
    with np.errstate(all="ignore"):
        a_t = transversal_accel(s.trans, s.longi, s.xi, s.theta, p, fs, g, ops)
        a_l = longitudinal_accel(s.trans, s.longi, s.xi, p, fs, g, ops)
        for _ in range(nsteps):
            hx, ht = vk_heat_rates(s.trans, s.trans_t, s.longi_t, s.xi, s.theta, p, fs, g)
            s.trans += dt * s.trans_t + half_dt2 * a_t
            s.longi += dt * s.longi_t + half_dt2 * a_l
            s.xi += dt * hx
            s.theta += dt * ht
            a_t2 = transversal_accel(s.trans, s.longi, s.xi, s.theta, p, fs, g, ops)
            a_l2 = longitudinal_accel(s.trans, s.longi, s.xi, p, fs, g, ops)
            s.trans_t += half_dt * (a_t + a_t2)
            s.longi_t += half_dt * (a_l + a_l2)
            a_t, a_l = a_t2, a_l2
    if not _finite(s.arrays()):
        return nsteps
    return -1
