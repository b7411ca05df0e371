"""Derived observables: 1/Z and Taylor expansions of the variational energy,
the critical charge, and the Shannon entropy of the one-particle density.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Polynomial
from scipy import optimize as _sopt

from . import closed_form, quadrature
from .core import (
    AccuracyError,
    BracketingError,
    DomainError,
    SingularEvaluationError,
    SystemSpec,
    TrialParams,
    hydrogen_ground_energy,
)
from .optimize import OptimizationProblem, minimize, optimize_static, start_lattice

INVERSE_Z = "inverse-Z"
Z_MINUS_ZB = "Z-minus-ZB"

# Branch point of the exact d = 3 energy and the fractional-power (Puiseux)
# coefficients found for it in the literature. Kept for comparison only.
Z_B = 0.9048539992
E_B = -0.407932489
P1 = -1.123475
Q3 = -0.197785
P2 = -0.752842

# Exact (non-variational) literature constants, d = 3.
EXACT_CRITICAL_CHARGE_3D = 0.91102822
EXACT_B2_3D = -0.15766642946915

# Constant offsets of the empirical entropy interpolation in d.
ENTROPY_OFFSETS = {3: 2.5455, 4: 5.4919, 5: 8.7805}

_PARTS_ODD = {3: closed_form._parts_3d, 5: closed_form._parts_5d}
_PARTS_EVEN = {2: closed_form._parts_2d, 4: closed_form._parts_4d}


@dataclass
class SeriesCoefficients:
    """Coefficients of an expansion about ``point`` in ``variable``.

    For ``inverse-Z`` the list holds the coefficients of Z^2, Z^1, Z^0, ...;
    for ``Z-minus-ZB`` those of (Z - point)^0, (Z - point)^1, ...
    """

    variable: str
    point: float
    coeffs: list
    order: int = field(init=False)

    def __post_init__(self):
        if self.variable not in (INVERSE_Z, Z_MINUS_ZB):
            raise DomainError(f"unknown expansion variable {self.variable!r}")
        self.coeffs = [float(c) for c in self.coeffs]
        self.order = len(self.coeffs) - 1

    def __call__(self, Z: float) -> float:
        if self.variable == INVERSE_Z:
            return sum(c * Z ** (2 - k) for k, c in enumerate(self.coeffs))
        x = Z - self.point
        return sum(c * x**k for k, c in enumerate(self.coeffs))


@dataclass
class DensityProfile:
    d: int
    r_grid: np.ndarray
    rho: np.ndarray
    entropy: float
    normalization: float = 1.0  # integral of rho over R^d


# ----------------------------------------------------------------------------
# series
# ----------------------------------------------------------------------------

def _series_divide(num, den, n_terms: int) -> list[float]:
    """First ``n_terms`` coefficients of the power series num(x)/den(x)."""
    num = list(num) + [0.0] * n_terms
    den = list(den) + [0.0] * n_terms
    if den[0] == 0:
        raise SingularEvaluationError("denominator vanishes at the expansion point")
    out = []
    for k in range(n_terms):
        acc = num[k] - sum(den[j] * out[k - j] for j in range(1, k + 1))
        out.append(acc / den[0])
    return out


def _check_order(order):
    if int(order) != order or order < 0:
        raise DomainError("order must be a nonnegative integer")
    return int(order)


def _inverse_z_odd(d, a, b, order):
    num, den = _PARTS_ODD[d](a, b, Polynomial([0.0, 1.0]))
    n, m = num.coef, den.coef
    if len(n) - len(m) != 2:
        raise SingularEvaluationError("energy does not grow as Z^2 for these parameters")
    # Z^p N(1/Z) / (Z^q D(1/Z)): reversed coefficient lists are series in u = 1/Z
    return _series_divide(n[::-1], m[::-1], order + 1)


def _inverse_z_even(d, a, b, order):
    import sympy as sp

    u = sp.symbols("u", positive=True)
    a_, b_ = sp.Rational(a), sp.Rational(b)
    x = b_ * u / a_
    sq = (a_ / u) * sp.sqrt(1 - x**2)
    num, den = _PARTS_EVEN[d](a_, b_, 1 / u, sq, sp.acos(x))
    ser = sp.series(u**2 * num / den, u, 0, order + 1).removeO()
    return [float(sp.N(ser.coeff(u, k), 20)) for k in range(order + 1)]


def _inverse_z_fit(d, a, b, order, u_max=0.05, n_points=60):
    """Least-squares fit of u^2 E(1/u) by polynomials in u on (0, u_max]."""
    u = u_max * (0.5 + 0.5 * np.cos(np.linspace(0.0, math.pi, n_points)))
    u = u[u > 0]
    f = np.array([closed_form.energy(d, a, b, 1.0 / ui) * ui**2 for ui in u])
    fits = []
    for extra in (5, 7):
        deg = order + extra
        V = np.vander(u / u_max, deg + 1, increasing=True)
        coef, *_ = np.linalg.lstsq(V, f, rcond=None)
        fits.append(coef[: order + 1] / u_max ** np.arange(order + 1))
    spread = np.max(np.abs(fits[0] - fits[1]))
    if spread > 1e-6:
        raise AccuracyError(
            f"fit coefficients unstable to {spread:.2e}; order {order} exceeds the fit accuracy"
        )
    return list(fits[1])


def large_Z_expansion(d: int, params: TrialParams, order: int = 2, method: str = "analytic") -> SeriesCoefficients:
    """Expand E_var(Z) = c0 Z^2 + c1 Z + c2 + c3/Z + ... with the exponents held fixed.

    ``method="analytic"`` divides polynomials for odd d and expands the
    inverse cosine symbolically for even d; ``method="fit"`` fits
    high-Z values of the closed form instead.
    """
    order = _check_order(order)
    if d not in closed_form.ENERGY:
        raise DomainError(f"series available for d in 2..5, got {d}")
    if not params.symmetric:
        raise DomainError("series use the symmetric trial (alpha1 = alpha2)")
    a, b = params.alpha, params.beta
    if method == "fit":
        coeffs = _inverse_z_fit(d, a, b, order)
    elif method == "analytic":
        coeffs = _inverse_z_odd(d, a, b, order) if d % 2 else _inverse_z_even(d, a, b, order)
    else:
        raise DomainError(f"unknown method {method!r}")
    return SeriesCoefficients(INVERSE_Z, math.inf, coeffs)


def exact_leading_coefficients(d: int) -> tuple[float, float]:
    """(B0, B1) with E_exact = -B0 Z^2 + B1 Z + O(1).

    At large Z the optimal exponents tend to the hydrogenic value
    alpha = 2/(d-1), beta = 0, so the leading pair is read off the symbolic
    expansion at that point.
    """
    if d not in (2, 3, 4):
        raise DomainError(f"exact leading coefficients implemented for d = 2, 3, 4, got {d}")
    import sympy as sp

    Z = sp.symbols("Z", positive=True)
    a = sp.Rational(2, d - 1)
    b = sp.Integer(0)
    if d % 2:
        num, den = _PARTS_ODD[d](a, b, Z)
    else:
        num, den = _PARTS_EVEN[d](a, b, Z, a * Z, sp.pi / 2)
    E = sp.cancel(num / den)
    c0 = sp.limit(E / Z**2, Z, sp.oo)
    c1 = sp.limit((E - c0 * Z**2) / Z, Z, sp.oo)
    return float(-c0), float(c1)


def taylor_at_ZB(params: TrialParams, Z_B: float = Z_B, order: int = 2,
                 min_pole_distance: float = 1e-3) -> SeriesCoefficients:
    """Taylor coefficients of E_var^(3D)(Z) in powers of (Z - Z_B), params fixed."""
    order = _check_order(order)
    a, b = params.alpha, params.beta
    num, den = closed_form._parts_3d(a, b, Polynomial([Z_B, 1.0]))
    poles = den.roots()
    if len(poles) and np.min(np.abs(poles)) < min_pole_distance:
        raise SingularEvaluationError(f"pole of E_3d within {min_pole_distance} of Z_B")
    coeffs = _series_divide(num.coef, den.coef, order + 1)
    return SeriesCoefficients(Z_MINUS_ZB, Z_B, coeffs)


# ----------------------------------------------------------------------------
# critical charge
# ----------------------------------------------------------------------------

# Pairwise exponent sums below this are treated as non-normalizable when
# the two orbital exponents are free: the minimizer otherwise slides to the
# integrability edge, where the moments lose all precision.
ASYMMETRIC_MARGIN = 1e-4


def _asymmetric_model(d, Z, margin):
    from .finitemass import energy_static

    def model(p: TrialParams) -> float:
        a, b, c = p.exponents(Z)
        if min(a + b, a + c, b + c) < margin:
            return math.inf
        return energy_static(p.alpha1, p.alpha2, p.beta, Z, d)

    return model


def _binding_gap(d: int, Z: float, parametrization: str) -> float:
    starts = start_lattice(d, parametrization)
    if parametrization == "alpha1_alpha2_beta":
        problem = OptimizationProblem(_asymmetric_model(d, Z, ASYMMETRIC_MARGIN), starts, Z,
                                      parametrization)
        res = minimize(problem)
    else:
        res = optimize_static(d, Z, starts=starts, parametrization=parametrization)
    return res.energy - hydrogen_ground_energy(Z, d)


def critical_charge(d: int, bracket=(0.8, 1.2), widened=(0.5, 1.5),
                    parametrization: str = "alpha_beta", gtol: float = 1e-8) -> float:
    """Charge at which the optimized energy meets the one-electron threshold.

    Bisection on g(Z) = E_var(Z) + Z^2 / (2 ((d-1)/2)^2), re-optimizing the
    trial exponents at every Z. With ``parametrization="alpha1_alpha2_beta"``
    (odd d) the unbound branch, where one exponent tends to zero, sits at
    g of order ``ASYMMETRIC_MARGIN * Z`` above zero, so the sign change
    marks where the bound branch meets the threshold.
    """
    if d not in (2, 3, 4, 5):
        raise DomainError(f"critical charge implemented for d in 2..5, got {d}")
    if parametrization == "alpha1_alpha2_beta" and d % 2 == 0:
        raise DomainError("the three-parameter trial is available for odd d only")
    g = lambda Z: _binding_gap(d, Z, parametrization)
    for lo, hi in (bracket, widened):
        glo, ghi = g(lo), g(hi)
        if glo * ghi < 0:
            break
    else:
        raise BracketingError(f"g(Z) has no sign change on {widened}")
    Zc = _sopt.bisect(g, lo, hi, xtol=1e-13, rtol=4 * np.finfo(float).eps, maxiter=200)
    if abs(g(Zc)) > gtol:
        raise AccuracyError(f"|g(Z_c)| = {abs(g(Zc)):.2e} exceeds {gtol:g}")
    return Zc


# ----------------------------------------------------------------------------
# Shannon entropy
# ----------------------------------------------------------------------------

def _optimal_trial(d, Z):
    return optimize_static(d, Z).params


def _radial_rule(d, Z, trial, n_radial):
    """Nodes r and weights for integrals of f(r) omega_d r^(d-1) dr on (0, inf).

    Gauss-Laguerre with weight r^(d-1) exp(-k r), k the decay rate of |psi|^2
    along r1, so the tail is covered exactly to infinity.
    """
    a, _, c = trial.exponents(Z)
    k = 2.0 * (a + c) if a + c > 0 else 2.0 * a
    x, w = quadrature._genlaguerre(n_radial, float(d - 1))
    return x / k, quadrature.sphere_area(d) * w * np.exp(x) / k**d


def _density_on_rule(d, Z, trial, cfg, n_radial):
    r, shell = _radial_rule(d, Z, trial, n_radial)
    rho = quadrature.density(r, trial, SystemSpec(d=d, Z=Z), cfg)
    return rho, shell


def shannon_entropy(d: int, Z: float, trial: TrialParams | None = None,
                    cfg: quadrature.QuadratureConfig = quadrature.QuadratureConfig(),
                    n_radial: int = 64, norm_tol: float = 1e-5) -> float:
    """S = -integral of rho ln rho over R^d for the one-particle density."""
    if trial is None:
        trial = _optimal_trial(d, Z)
    rho, shell = _density_on_rule(d, Z, trial, cfg, n_radial)
    total = float(np.sum(shell * rho))
    if abs(total - 1.0) > norm_tol:
        raise AccuracyError(f"density integrates to {total:.8f}, not 1")
    if np.any(rho <= 0):
        raise AccuracyError("non-positive density value on the radial grid")
    return float(-np.sum(shell * rho * np.log(rho)))


def density_profile(d: int, Z: float, trial: TrialParams | None = None,
                    r_min: float | None = None, r_max: float | None = None, n_points: int = 400,
                    cfg: quadrature.QuadratureConfig = quadrature.QuadratureConfig()) -> DensityProfile:
    """rho on a log-spaced grid (for plotting), with the entropy and the normalization
    taken from the radial Gauss-Laguerre rule."""
    if trial is None:
        trial = _optimal_trial(d, Z)
    a, _, c = trial.exponents(Z)
    k = 2.0 * min(a + c, a) if a + c > 0 else 2.0 * a
    r_min = 1e-5 / k if r_min is None else r_min
    r_max = 60.0 / k if r_max is None else r_max
    r = np.geomspace(r_min, r_max, n_points)
    rho = np.clip(quadrature.density(r, trial, SystemSpec(d=d, Z=Z), cfg), 0.0, None)
    rho_q, shell = _density_on_rule(d, Z, trial, cfg, 64)
    prof = DensityProfile(d, r, rho, shannon_entropy(d, Z, trial, cfg))
    prof.normalization = float(np.sum(shell * rho_q))
    return prof


def entropy_interpolation(d: int, Z: float, S2: float) -> float:
    """Empirical estimate of S^(d) from the d = 2 entropy at the same Z."""
    if d not in ENTROPY_OFFSETS:
        raise DomainError(f"interpolation defined for d = 3, 4, 5, got {d}")
    return ENTROPY_OFFSETS[d] + 0.5 * d * S2 + ((d - 1) * (d - 2) + 2) / (200.0 * Z)
