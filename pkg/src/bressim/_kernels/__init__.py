"""Stepping-kernel backend selection.

The compiled Cython core is used when its extension module built; the
pure-numpy backend is the fallback and the semantic reference.  Set
BRESSIM_KERNELS=python (or =cython) to force a choice; forcing cython
without the extension raises at import.
"""

from __future__ import annotations

import os

from . import py_backend

try:  # pragma: no cover - depends on build environment
    from . import _core
except ImportError:  # pragma: no cover
    _core = None

_forced = os.environ.get("BRESSIM_KERNELS", "").strip().lower()
if _forced == "python":
    _impl = None
elif _forced == "cython":
    if _core is None:
        raise ImportError("BRESSIM_KERNELS=cython but the compiled kernels are not built")
    _impl = _core
elif _forced:
    raise ImportError(f"unknown BRESSIM_KERNELS value {_forced!r} (use 'python' or 'cython')")
else:
    _impl = _core

BACKEND = "cython" if _impl is not None else "python"


def _params_tuple(p):
    return (p.rho1, p.beta1, p.k1, p.nu1, p.rho2, p.beta2, p.k2, p.nu2,
            p.sigma, p.alpha1, p.alpha2, p.gamma, p.delta, p.mu, p.lam)


def advance_bresse(s, p, fs, g, dt, nsteps, curved=True) -> int:
    """Advance the curved/straight beam nsteps in place.

    Returns -1 on success or the 1-based step offset at which non-finite
    values were detected (block-end check).
    """
    if _impl is None:
        return py_backend.advance_bresse(s, p, fs, g, dt, nsteps, curved)
    return _impl.bresse_block(
        s.trans, s.shear, s.longi, s.trans_t, s.shear_t, s.longi_t, s.xi, s.theta,
        fs.p1, fs.r1, fs.q1, fs.h1, fs.h2, fs.p2, fs.r2, fs.q2,
        *_params_tuple(p), (p.l if curved else 0.0),
        g.n_total, g.interface_index, g.h, dt, int(nsteps),
    )


def advance_vonkarman(s, p, fs, g, dt, nsteps, ops=None) -> int:
    """Advance the limit model nsteps in place; same return convention."""
    if _impl is None:
        return py_backend.advance_vonkarman(s, p, fs, g, dt, nsteps, ops)
    from ..vonkarman import vk_constant_forces, vk_operators

    if ops is None:
        ops = vk_operators(p, g)
    f_trans, f_long = vk_constant_forces(p, fs, g)
    return _impl.vonkarman_block(
        s.trans, s.trans_t, s.longi, s.longi_t, s.xi, s.theta,
        fs.h1, fs.h2,
        ops.mu_bend, ops.rho_node, ops.beta_cell, f_trans, f_long,
        p.sigma, p.alpha1, p.alpha2, p.gamma, p.delta, p.mu, p.lam,
        g.n_total, g.interface_index, g.h, dt, int(nsteps),
    )
