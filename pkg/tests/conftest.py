"""Shared parameter sets and manufactured data for the test suite."""

import numpy as np

from bressim import exprs
from bressim.params import PhysicalParams


def section51_params(**overrides):
    """The two-material constants of the curvature-limit experiment."""
    base = dict(rho1=1, rho2=1, beta1=2, beta2=2, k1=1, k2=4, sigma=2, nu1=4, nu2=8,
                alpha1=1, alpha2=1, gamma=1, delta=1, mu=1, lam=1, l=0.1, L=10, L0=4)
    base.update(overrides)
    return PhysicalParams(**base)


def unit_params(**overrides):
    base = dict(rho1=1, rho2=1, beta1=1, beta2=1, k1=1, k2=1, sigma=1, nu1=1, nu2=1,
                alpha1=1, alpha2=1, gamma=1, delta=1, mu=1, lam=1, l=0.0, L=1, L0=0.5)
    base.update(overrides)
    return PhysicalParams(**base)


def section51_ic():
    p = exprs.parse
    return {
        "phi0": p("-3/16*x^2 + 3/4*x"), "phi1": p("x/4"),
        "psi0": p("1/192*x^2 - 1/12*x"), "psi1": p("x/4"),
        "omega0": p("-3/80*x^2 + 3/20*x"), "omega1": p("x/4"),
        "u0": p("0"), "u1": p("-1/6*(x-10)"),
        "v0": p("1/96*x^2 - 5/48*x"), "v1": p("-1/6*(x-10)"),
        "w0": p("1/40*x^2 - 7/20*x + 1"), "w1": p("-1/6*(x-10)"),
        "xi0": p("x^2 - 4*x"), "theta0": p("x^2 - 4*x"),
    }


def compatible_interface_fields(p, x0=4.0):
    """Smooth per-segment fields satisfying the transmission conditions at x0.

    Damped side: sin/cos/x^2m fields; undamped side: cubics whose value and
    first derivative are chosen so continuity and all three flux conditions
    hold exactly at the interface point.
    """
    phi = lambda x: np.sin(x)
    psi = lambda x: np.cos(x)
    omega = lambda x: x * x / 20.0
    a_u, a_v, a_w = phi(x0), psi(x0), omega(x0)
    vp = p.nu1 * (-np.sin(x0)) / p.nu2
    wp = x0 / 10.0
    up = p.k1 * (np.cos(x0) + psi(x0) + p.l * omega(x0)) / p.k2 - a_v - p.l * a_w
    u = lambda x: a_u + up * (x - x0) + 0.05 * (x - x0) ** 2 + 0.02 * (x - x0) ** 3
    v = lambda x: a_v + vp * (x - x0) + 0.07 * (x - x0) ** 2 - 0.03 * (x - x0) ** 3
    w = lambda x: a_w + wp * (x - x0) - 0.04 * (x - x0) ** 2 + 0.05 * (x - x0) ** 3
    return phi, psi, omega, u, v, w
