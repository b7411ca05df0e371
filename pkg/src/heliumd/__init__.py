"""Variational ground state of d-dimensional helium-like three-body systems.

The trial function is ``exp(-alpha Z (r1 + r2) - beta r12)`` (and its
``alpha1 != alpha2`` exchange-symmetrized extension). Closed forms cover
d = 2..5; a perimetric-coordinate quadrature handles any d >= 2 and checks them.
"""
from .core import (
    AccuracyError,
    BracketingError,
    ConfigurationError,
    DomainError,
    EnergyResult,
    SingularEvaluationError,
    SystemSpec,
    TrialParams,
    cusps,
    hydrogen_ground_energy,
)
from .closed_form import energy, energy_2d, energy_3d, energy_4d, energy_5d, energy_uncorrelated
from .finitemass import ExponentTriple, energy_appendix, energy_general
from .quadrature import QuadratureConfig
from .optimize import OptimizationProblem, minimize, optimize_static, scan_Z
from .analysis import (
    critical_charge,
    density_profile,
    entropy_interpolation,
    exact_leading_coefficients,
    large_Z_expansion,
    shannon_entropy,
    taylor_at_ZB,
)

__version__ = "0.1.0"
