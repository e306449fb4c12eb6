"""Physical parameters and pointwise constitutive quantities.

The beam occupies (0, L) with the interface at L0; the damped segment
(0, L0) carries subscript-1 coefficients and the heat fields, the
undamped segment (L0, L) subscript-2.  The axial modulus sigma is shared
by both segments.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .errors import InterfaceOutOfRange, NonPositiveCoefficient

__all__ = [
    "PhysicalParams",
    "Segment",
    "ValidationReport",
    "validate_params",
    "ensure_valid",
    "constitutive",
]


class Segment(Enum):
    DAMPED = 1
    UNDAMPED = 2


@dataclass(frozen=True)
class PhysicalParams:
    """All material and geometry coefficients.

    Every coefficient is strictly positive except the curvature l, which
    may be zero (straight beam).  `lam` is the vertical heat conductivity
    (written lambda in config files).
    """

    rho1: float
    rho2: float
    beta1: float
    beta2: float
    k1: float
    k2: float
    sigma: float
    nu1: float
    nu2: float
    alpha1: float
    alpha2: float
    gamma: float
    delta: float
    mu: float
    lam: float
    l: float
    L: float
    L0: float

    def with_(self, **kw) -> "PhysicalParams":
        return replace(self, **kw)


_POSITIVE = [
    "rho1", "rho2", "beta1", "beta2", "k1", "k2", "sigma",
    "nu1", "nu2", "alpha1", "alpha2", "gamma", "delta", "mu", "lam", "L",
]

_ATTRACTOR_RTOL = 1e-12


@dataclass
class ValidationReport:
    errors: list
    attractor_condition: bool

    @property
    def ok(self) -> bool:
        return not self.errors


def validate_params(p: PhysicalParams) -> ValidationReport:
    """Check hard invariants and the sufficient attractor condition.

    Hard errors: any non-positive coefficient (l may be 0 but not
    negative) and an interface outside (0, L).  The advisory
    `attractor_condition` flag is True iff rho1 > rho2, beta1 > beta2,
    k1 <= k2, nu1 <= nu2 and rho1/beta1 == k1/nu1 to 1e-12 relative;
    simulation proceeds either way.
    """
    errors = []
    for name in _POSITIVE:
        v = getattr(p, name)
        if not (v > 0.0):
            errors.append(NonPositiveCoefficient(name, v))
    if p.l < 0.0:
        errors.append(NonPositiveCoefficient("l", p.l))
    if not (0.0 < p.L0 < p.L):
        errors.append(InterfaceOutOfRange(p.L0, p.L))

    attractor = False
    if p.beta1 > 0 and p.nu1 > 0:
        speeds_equal = abs(p.rho1 / p.beta1 - p.k1 / p.nu1) <= _ATTRACTOR_RTOL * abs(p.k1 / p.nu1)
        attractor = (
            p.rho1 > p.rho2 and p.beta1 > p.beta2 and p.k1 <= p.k2 and p.nu1 <= p.nu2 and speeds_equal
        )
    return ValidationReport(errors=errors, attractor_condition=attractor)


def ensure_valid(p: PhysicalParams) -> ValidationReport:
    """validate_params, raising the first hard error if any."""
    report = validate_params(p)
    if report.errors:
        raise report.errors[0]
    return report


def constitutive(p: PhysicalParams, segment: Segment, phi_x, psi, omega, omega_x, phi, psi_x):
    """Pointwise stress resultants (Q, N, M, J) for one segment.

    Q = k_i (phi_x + psi + l omega)    shear force
    N = sigma (omega_x - l phi)        linear axial force
    M = nu_i psi_x                     bending moment
    J = sigma (omega_x - l phi + psi^2/2)   nonlinear axial stress

    Inputs may be scalars or arrays; on the undamped segment the
    arguments play the roles of (u_x, v, w, w_x, u, v_x).
    """
    if segment is Segment.DAMPED:
        k, nu = p.k1, p.nu1
    else:
        k, nu = p.k2, p.nu2
    Q = k * (phi_x + psi + p.l * omega)
    N = p.sigma * (omega_x - p.l * phi)
    M = nu * psi_x
    J = p.sigma * (omega_x - p.l * phi + 0.5 * psi * psi)
    return Q, N, M, J
