"""Uniform spatial mesh with the material interface pinned to a node."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InterfaceNotOnGrid

__all__ = ["Grid", "build_grid"]

_ALIGN_TOL = 1e-9


@dataclass(frozen=True)
class Grid:
    n_total: int
    h: float
    interface_index: int
    x: np.ndarray = field(repr=False)

    @property
    def L(self) -> float:
        return float(self.x[-1])

    @property
    def L0(self) -> float:
        return float(self.x[self.interface_index])

    @property
    def nd(self) -> int:
        """Node count of the damped segment (nodes 0..interface_index)."""
        return self.interface_index + 1

    @property
    def nu(self) -> int:
        """Node count of the undamped segment (interface_index..n_total-1)."""
        return self.n_total - self.interface_index

    @property
    def xd(self) -> np.ndarray:
        return self.x[: self.nd]

    @property
    def xu(self) -> np.ndarray:
        return self.x[self.interface_index :]

    def node_at(self, pos: float) -> int:
        """Index of the node at x=pos; raises if pos is off-grid."""
        idx = round(pos / self.h)
        if not (0 <= idx < self.n_total) or abs(self.x[idx] - pos) > _ALIGN_TOL:
            raise InterfaceNotOnGrid(pos, self.h)
        return int(idx)


def build_grid(L: float, L0: float, n_per_unit: int) -> Grid:
    """Uniform grid with spacing 1/n_per_unit and a node exactly at L0.

    L*n_per_unit and L0*n_per_unit must be integers (to tolerance); the
    latter failing raises InterfaceNotOnGrid.
    """
    if n_per_unit <= 0:
        raise ValueError(f"n_per_unit must be positive, got {n_per_unit}")
    n_cells = L * n_per_unit
    if abs(n_cells - round(n_cells)) > _ALIGN_TOL:
        raise ValueError(f"L*n_per_unit = {n_cells} is not an integer; grid cannot end at L={L}")
    i_face = L0 * n_per_unit
    if abs(i_face - round(i_face)) > _ALIGN_TOL * n_per_unit:
        raise InterfaceNotOnGrid(L0, 1.0 / n_per_unit)
    n_total = int(round(n_cells)) + 1
    interface_index = int(round(i_face))
    if not (0 < interface_index < n_total - 1):
        raise InterfaceNotOnGrid(L0, 1.0 / n_per_unit)
    # i/n_per_unit is exact where representable (e.g. x=4.0 at node 40 for h=0.1)
    x = np.arange(n_total, dtype=float) / n_per_unit
    return Grid(n_total=n_total, h=1.0 / n_per_unit, interface_index=interface_index, x=x)
