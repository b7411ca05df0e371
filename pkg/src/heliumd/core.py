"""Domain types and elementary relations shared across the package.

Conventions: atomic units throughout. Particles 1 and 2 carry charges
``e1``, ``e2`` and masses ``m1``, ``m2``; the third particle carries charge
``Z`` and mass ``M``. ``M = inf`` selects the static-nucleus Hamiltonian.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

INF = math.inf


class DomainError(ValueError):
    """Arguments outside the region where a formula or integral is defined."""


class SingularEvaluationError(ArithmeticError):
    """A denominator vanishes (or nearly vanishes) at the requested point."""


class AccuracyError(RuntimeError):
    """A numerical estimate failed its own convergence check."""


class ConfigurationError(ValueError):
    """An optimization or run configuration cannot be executed."""


class BracketingError(RuntimeError):
    """A root-finding bracket does not contain a sign change."""


@dataclass(frozen=True)
class SystemSpec:
    d: int = 3
    Z: float = 2.0
    e1: float = -1.0
    e2: float = -1.0
    m1: float = 1.0
    m2: float = 1.0
    M: float = INF

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise DomainError(f"dimension must be an integer >= 2, got {self.d}")
        for name in ("m1", "m2", "M"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)}")

    @property
    def static(self) -> bool:
        return math.isinf(self.M)


@dataclass(frozen=True)
class TrialParams:
    """Nonlinear parameters of exp(-alpha1 Z r1 - alpha2 Z r2 - beta r12).

    ``alpha2`` defaults to ``alpha1`` (the symmetric two-parameter trial).
    """

    alpha1: float
    beta: float
    alpha2: float | None = field(default=None)

    def __post_init__(self):
        if self.alpha2 is None:
            object.__setattr__(self, "alpha2", self.alpha1)

    @property
    def alpha(self) -> float:
        return self.alpha1

    @property
    def symmetric(self) -> bool:
        return self.alpha1 == self.alpha2

    def exponents(self, Z: float) -> tuple[float, float, float]:
        """Decay rates (a, b, c) for r1, r2 and r12."""
        return (self.alpha1 * Z, self.alpha2 * Z, self.beta)

    def is_integrable(self, Z: float) -> bool:
        a, b, c = self.exponents(Z)
        return a + b > 0 and a + c > 0 and b + c > 0


@dataclass
class EnergyResult:
    energy: float
    params: TrialParams
    nu1: float
    nu2: float
    iterations: int = 0
    converged: bool = True
    Z: float | None = None
    extras: dict = field(default_factory=dict)


def hydrogen_ground_energy(Z: float, d: int) -> float:
    """Ground-state energy of a one-electron ion of charge Z in d dimensions."""
    if d < 2:
        raise DomainError(f"dimension must be >= 2, got {d}")
    return -0.5 * Z**2 / (1.0 + (d - 3) / 2.0) ** 2


def cusps(params: TrialParams, Z: float) -> tuple:
    """Electron-nucleus and electron-electron cusp values.

    Returns ``(nu1, nu2)`` for a symmetric trial and ``((nu1_a, nu1_b), nu2)``
    when ``alpha1 != alpha2``.
    """
    nu2 = 0.0 - params.beta  # no -0.0 for beta = 0
    if params.symmetric:
        return (-params.alpha1 * Z, nu2)
    return ((-params.alpha1 * Z, -params.alpha2 * Z), nu2)


def energy_result(energy: float, params: TrialParams, Z: float, **kw) -> EnergyResult:
    nu1, nu2 = cusps(params, Z)
    return EnergyResult(energy=energy, params=params, nu1=nu1, nu2=nu2, Z=Z, **kw)
