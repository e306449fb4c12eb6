"""Field state and source terms sampled on the grid.

A FieldState stores each mechanical field as one global array over all
grid nodes; the interface node is shared, so the transmission continuity
phi=u, psi=v, omega=w holds by construction.  Segment views (phi, psi,
omega on the damped side; u, v, w on the undamped side) overlap at the
interface node.  The heat fields xi, theta live on the damped nodes only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exprs
from .exprs import Expr
from .grid import Grid

__all__ = ["FieldState", "ForcingSet", "ForcingSamples", "sample_initial_state", "apply_dirichlet", "zero_state"]


@dataclass
class FieldState:
    """All unknown fields at one time level.

    trans/shear/longi are the transversal displacement, shear angle
    variation, and longitudinal displacement over every grid node
    (damped values = phi, psi, omega; undamped = u, v, w).
    """

    grid: Grid
    trans: np.ndarray
    shear: np.ndarray
    longi: np.ndarray
    trans_t: np.ndarray
    shear_t: np.ndarray
    longi_t: np.ndarray
    xi: np.ndarray
    theta: np.ndarray
    t: float = 0.0

    # --- damped-segment views (nodes 0..interface_index) ---
    @property
    def phi(self) -> np.ndarray:
        return self.trans[: self.grid.nd]

    @property
    def psi(self) -> np.ndarray:
        return self.shear[: self.grid.nd]

    @property
    def omega(self) -> np.ndarray:
        return self.longi[: self.grid.nd]

    @property
    def phi_t(self) -> np.ndarray:
        return self.trans_t[: self.grid.nd]

    @property
    def psi_t(self) -> np.ndarray:
        return self.shear_t[: self.grid.nd]

    @property
    def omega_t(self) -> np.ndarray:
        return self.longi_t[: self.grid.nd]

    # --- undamped-segment views (interface_index..n_total-1) ---
    @property
    def u(self) -> np.ndarray:
        return self.trans[self.grid.interface_index :]

    @property
    def v(self) -> np.ndarray:
        return self.shear[self.grid.interface_index :]

    @property
    def w(self) -> np.ndarray:
        return self.longi[self.grid.interface_index :]

    @property
    def u_t(self) -> np.ndarray:
        return self.trans_t[self.grid.interface_index :]

    @property
    def v_t(self) -> np.ndarray:
        return self.shear_t[self.grid.interface_index :]

    @property
    def w_t(self) -> np.ndarray:
        return self.longi_t[self.grid.interface_index :]

    def arrays(self) -> tuple:
        return (self.trans, self.shear, self.longi, self.trans_t, self.shear_t,
                self.longi_t, self.xi, self.theta)

    def copy(self) -> "FieldState":
        return FieldState(
            grid=self.grid,
            trans=self.trans.copy(), shear=self.shear.copy(), longi=self.longi.copy(),
            trans_t=self.trans_t.copy(), shear_t=self.shear_t.copy(), longi_t=self.longi_t.copy(),
            xi=self.xi.copy(), theta=self.theta.copy(), t=self.t,
        )

    def is_finite(self) -> bool:
        return all(np.isfinite(a).all() for a in self.arrays())


def zero_state(g: Grid, t: float = 0.0) -> FieldState:
    n, nd = g.n_total, g.nd
    z = lambda m: np.zeros(m, dtype=float)
    return FieldState(g, z(n), z(n), z(n), z(n), z(n), z(n), z(nd), z(nd), t)


# --- source terms ------------------------------------------------------------

_ZERO = exprs.Num(0.0)


@dataclass(frozen=True)
class ForcingSet:
    """The eight source expressions (x-dependent only).

    p1, r1, q1 load the damped mechanical equations, h1/h2 the heat
    equations, p2, r2, q2 the undamped mechanical equations.
    """

    p1: Expr = _ZERO
    r1: Expr = _ZERO
    q1: Expr = _ZERO
    h1: Expr = _ZERO
    h2: Expr = _ZERO
    p2: Expr = _ZERO
    r2: Expr = _ZERO
    q2: Expr = _ZERO

    @staticmethod
    def from_strings(**kw: str) -> "ForcingSet":
        return ForcingSet(**{k: exprs.parse(v) for k, v in kw.items()})

    def sample(self, g: Grid) -> "ForcingSamples":
        xd, xu = g.xd, g.xu
        ev = lambda e, x: np.asarray(exprs.evaluate(e, x), dtype=float) + np.zeros_like(x)
        return ForcingSamples(
            p1=ev(self.p1, xd), r1=ev(self.r1, xd), q1=ev(self.q1, xd),
            h1=ev(self.h1, xd), h2=ev(self.h2, xd),
            p2=ev(self.p2, xu), r2=ev(self.r2, xu), q2=ev(self.q2, xu),
        )


@dataclass(frozen=True)
class ForcingSamples:
    """Source terms evaluated on the grid nodes (damped/undamped arrays)."""

    p1: np.ndarray
    r1: np.ndarray
    q1: np.ndarray
    h1: np.ndarray
    h2: np.ndarray
    p2: np.ndarray
    r2: np.ndarray
    q2: np.ndarray

    @property
    def heat_free(self) -> bool:
        """True when both heat sources vanish on the grid (Lyapunov hypothesis)."""
        return not (np.any(self.h1) or np.any(self.h2))

    @staticmethod
    def zeros(g: Grid) -> "ForcingSamples":
        zd = lambda: np.zeros(g.nd)
        zu = lambda: np.zeros(g.nu)
        return ForcingSamples(zd(), zd(), zd(), zd(), zd(), zu(), zu(), zu())


def as_samples(f, g: Grid) -> ForcingSamples:
    if isinstance(f, ForcingSamples):
        return f
    if isinstance(f, ForcingSet):
        return f.sample(g)
    if f is None:
        return ForcingSamples.zeros(g)
    raise TypeError(f"expected ForcingSet or ForcingSamples, got {type(f)!r}")


# --- initial data -------------------------------------------------------------

IC_KEYS = ("phi0", "psi0", "omega0", "u0", "v0", "w0",
           "phi1", "psi1", "omega1", "u1", "v1", "w1", "xi0", "theta0")


def sample_initial_state(g: Grid, ic: dict) -> FieldState:
    """Sample per-field expressions nodewise into an admissible FieldState.

    Missing keys default to zero.  Dirichlet rows are overwritten with 0
    and the damped-side trace wins at the interface (the global-array
    layout shares that node, so continuity holds by construction).
    """
    unknown = set(ic) - set(IC_KEYS)
    if unknown:
        raise KeyError(f"unknown initial-condition keys: {sorted(unknown)}")
    get = lambda k: ic.get(k, _ZERO)
    ev = lambda e, x: np.asarray(exprs.evaluate(e, x), dtype=float) + np.zeros_like(x)
    s = zero_state(g)
    ii = g.interface_index
    for key, arr in (("phi0", s.trans), ("psi0", s.shear), ("omega0", s.longi),
                     ("phi1", s.trans_t), ("psi1", s.shear_t), ("omega1", s.longi_t)):
        arr[: g.nd] = ev(get(key), g.xd)
    for key, arr in (("u0", s.trans), ("v0", s.shear), ("w0", s.longi),
                     ("u1", s.trans_t), ("v1", s.shear_t), ("w1", s.longi_t)):
        vals = ev(get(key), g.xu)
        arr[ii + 1 :] = vals[1:]  # damped-side value wins at the shared interface node
    s.xi[:] = ev(get("xi0"), g.xd)
    s.theta[:] = ev(get("theta0"), g.xd)
    return apply_dirichlet(s)


def apply_dirichlet(s: FieldState) -> FieldState:
    """Zero the constrained rows; idempotent linear projection.

    Outer mechanical ends (node 0 and the last node, values and
    velocities) and the heat fields at both ends of the damped segment.
    """
    out = s.copy()
    for arr in (out.trans, out.shear, out.longi, out.trans_t, out.shear_t, out.longi_t):
        arr[0] = 0.0
        arr[-1] = 0.0
    for arr in (out.xi, out.theta):
        arr[0] = 0.0
        arr[-1] = 0.0
    return out
