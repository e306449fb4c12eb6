"""Exception types shared across the package.

CLI exit-code convention: configuration problems map to 2, numerical
blow-up (NonFiniteState) to 3, I/O failures to 4.
"""

from __future__ import annotations


class BressimError(Exception):
    """Base class for all package errors."""


# --- parameter validation -------------------------------------------------

class NonPositiveCoefficient(BressimError):
    def __init__(self, name: str, value: float):
        self.name = name
        self.value = value
        super().__init__(f"coefficient {name} must be > 0, got {value!r}")


class InterfaceOutOfRange(BressimError):
    def __init__(self, L0: float, L: float):
        self.L0 = L0
        self.L = L
        super().__init__(f"interface position must satisfy 0 < L0 < L, got L0={L0}, L={L}")


# --- expression language --------------------------------------------------

class ExprSyntaxError(BressimError):
    """Parse failure; carries the byte offset and what was expected there."""

    def __init__(self, offset: int, expected: str, found: str = ""):
        self.offset = offset
        self.expected = expected
        self.found = found
        at = f" (found {found!r})" if found else ""
        super().__init__(f"syntax error at offset {offset}: expected {expected}{at}")


class DivisionByZeroLiteral(BressimError):
    def __init__(self, offset: int):
        self.offset = offset
        super().__init__(f"division by literal zero at offset {offset}")


# --- grid / state ---------------------------------------------------------

class InterfaceNotOnGrid(BressimError):
    def __init__(self, L0: float, h: float):
        self.L0 = L0
        self.h = h
        super().__init__(f"interface x={L0} does not coincide with a grid node (h={h})")


# --- solvers --------------------------------------------------------------

class SingularInterfaceSystem(BressimError):
    """Defensive guard; cannot occur for positive moduli and h > 0."""


class ZeroPivot(BressimError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"tridiagonal solve hit a zero pivot at row {index}")


class NonFiniteState(BressimError):
    def __init__(self, step: int = -1, t: float = 0.0, where: str = ""):
        self.step = step
        self.t = t
        if where:
            msg = f"non-finite value refused in {where}"
        else:
            msg = f"non-finite field values detected at step {step} (t={t:.6g})"
        super().__init__(msg)


# --- diagnostics ----------------------------------------------------------

class HeatSourcePresent(BressimError):
    def __init__(self) -> None:
        super().__init__("Lyapunov/decay diagnostics require zero heat sources (h1 = h2 = 0)")


class InsufficientSamples(BressimError):
    def __init__(self, n: int):
        self.n = n
        super().__init__(f"need at least 2 trajectory samples, got {n}")


# --- configuration --------------------------------------------------------

class ConfigError(BressimError):
    """Base class for run-configuration problems (CLI exit code 2)."""


class ConfigSyntax(ConfigError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"config line {line}: {message}")


class UnknownKey(ConfigError):
    def __init__(self, name: str, line: int = 0):
        self.name = name
        self.line = line
        where = f" (line {line})" if line else ""
        super().__init__(f"unknown config key {name!r}{where}")
