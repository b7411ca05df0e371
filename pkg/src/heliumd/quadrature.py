"""Brute-force numerical integration of the variational integrals for any d >= 2.

Everything here is independent of the closed-form expressions and is used as
their oracle. Integrals over the triangle domain of (r1, r2, r12) are taken in
perimetric coordinates

    eta = -r1 + r2 + r12,  sigma = r1 - r2 + r12,  tau = 2 (r1 + r2 - r12),

which map the domain onto the positive octant with dr1 dr2 dr12 = d(eta sigma tau)/8.
In these coordinates the triangle area is S = sqrt(eta sigma tau (2 eta + 2 sigma + tau)) / 8,
so the weight r1 r2 r12 S**(d-3) is a polynomial for odd d and carries
half-integer powers for even d.

Two rules are provided:

``"product"``
    Generalized Gauss-Laguerre in each perimetric axis, scaled by the decay
    rate of |psi|^2 along that axis. Exact for odd d (polynomial times exponential).
``"simplex"``
    Radial/simplex split (eta, sigma, tau) = s (y1, y2, y3), sum(y) = 1. The
    radial integral is Gauss-Laguerre (exact, the radial factor is polynomial
    for every d); the simplex is collapsed to the unit square and integrated
    with Gauss-Jacobi rules that absorb the half-integer endpoint powers of
    even d, leaving a smooth integrand.

``"auto"`` uses ``product`` for odd d and ``simplex`` for even d.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special

from .core import AccuracyError, DomainError, SystemSpec, TrialParams
from .hamiltonian import local_energy

SCHEMES = ("auto", "product", "simplex")


@dataclass(frozen=True)
class QuadratureConfig:
    nodes_per_axis: int = 40
    scheme: str = "auto"
    scale: float | None = None  # overrides the per-axis decay rates (product rule)

    def __post_init__(self):
        if self.nodes_per_axis < 8:
            raise DomainError("nodes_per_axis must be >= 8")
        if self.scheme not in SCHEMES:
            raise DomainError(f"unknown quadrature scheme {self.scheme!r}")

    def doubled(self) -> "QuadratureConfig":
        return QuadratureConfig(2 * self.nodes_per_axis, self.scheme, self.scale)


@dataclass(frozen=True)
class PerimetricPoint:
    eta: float
    sigma: float
    tau: float

    def __post_init__(self):
        if min(self.eta, self.sigma, self.tau) < 0:
            raise DomainError("perimetric coordinates must be nonnegative")

    def distances(self) -> tuple[float, float, float]:
        return perimetric_to_distances(self.eta, self.sigma, self.tau)


def perimetric_to_distances(eta, sigma, tau):
    r1 = (sigma + 0.5 * tau) / 2.0
    r2 = (eta + 0.5 * tau) / 2.0
    r12 = (eta + sigma) / 2.0
    return r1, r2, r12


def distances_to_perimetric(r1, r2, r12):
    return (-r1 + r2 + r12, r1 - r2 + r12, 2.0 * (r1 + r2 - r12))


def measure_constant(d: int) -> float:
    """2^d pi^(d-1) / (d-2)!"""
    return 2.0**d * math.pi ** (d - 1) / math.factorial(d - 2)


def triangle_area(r1, r2, r12):
    p = (r1 + r2 + r12) * (r1 + r2 - r12) * (r1 - r2 + r12) * (-r1 + r2 + r12)
    return 0.25 * np.sqrt(np.maximum(p, 0.0))


def weight(r1, r2, r12, d: int):
    """Radial measure density w(r1, r2, r12; d)."""
    if d < 2:
        raise DomainError("dimension must be >= 2")
    r1, r2, r12 = (np.asarray(x, dtype=float) for x in (r1, r2, r12))
    tol = 1e-12 * np.maximum(1.0, r1 + r2 + r12)
    if np.any(r12 > r1 + r2 + tol) or np.any(r12 < np.abs(r1 - r2) - tol):
        raise DomainError("distances violate the triangle inequality")
    S = triangle_area(r1, r2, r12)
    w = measure_constant(d) * r1 * r2 * r12 * S ** float(d - 3)
    return w if w.ndim else float(w)


# ----------------------------------------------------------------------------
# node tables
# ----------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _genlaguerre(n: int, alpha: float):
    x, w = special.roots_genlaguerre(n, alpha)
    return x, w


@lru_cache(maxsize=None)
def _jacobi01(n: int, p_left: float, p_right: float):
    """Nodes/weights on [0, 1] for the weight t**p_left (1-t)**p_right."""
    x, w = special.roots_jacobi(n, p_right, p_left)
    t = 0.5 * (1.0 + x)
    w = w * 0.5 ** (p_left + p_right + 1.0)
    return t, w


def _decay_rates(A, B, C):
    """Per-axis decay of exp(-A r1 - B r2 - C r12) in (eta, sigma, tau)."""
    lam = (0.5 * (B + C), 0.5 * (A + C), 0.25 * (A + B))
    if min(lam) <= 0:
        raise DomainError(
            "exponents are not square-integrable: need a+b>0, a+c>0, b+c>0"
        )
    return lam


def _product_nodes(d, lam, n, scale=None):
    h = 0.5 * (d - 3)
    x, w = _genlaguerre(n, h)
    axes = []
    for l in lam:
        s = scale if scale is not None else l
        axes.append((x / s, w * s ** (-h - 1.0), s, l))
    (e, we, se, le), (s_, ws, ss, ls), (t, wt, st, lt) = axes
    E, S, T = np.meshgrid(e, s_, t, indexing="ij")
    W = we[:, None, None] * ws[None, :, None] * wt[None, None, :]
    # exp factor mismatch when a user scale differs from the true decay rates
    if scale is not None:
        W = W * np.exp(-(le - se) * E - (ls - ss) * S - (lt - st) * T)
    W = W * (2.0 * E + 2.0 * S + T) ** h * 8.0 ** (-(d - 3)) / 8.0
    return E.ravel(), S.ravel(), T.ravel(), W.ravel()


def _simplex_nodes(d, lam, n):
    h = 0.5 * (d - 3)
    xs, ws = _genlaguerre(n, 2.0 + 4.0 * h)
    tt, wt = _jacobi01(n, h, 2.0 * h + 1.0)
    vv, wv = _jacobi01(n, h, h)
    T, V = np.meshgrid(tt, vv, indexing="ij")
    WA = (wt[:, None] * wv[None, :]) * (2.0 - T) ** h
    Y1 = (1.0 - T) * V
    Y2 = (1.0 - T) * (1.0 - V)
    Y3 = T
    L = lam[0] * Y1 + lam[1] * Y2 + lam[2] * Y3
    # s = x / L for every direction
    Sr = xs[None, None, :] / L[..., None]
    W = WA[..., None] * ws[None, None, :] * L[..., None] ** (-(3.0 + 4.0 * h))
    E = Sr * Y1[..., None]
    Sg = Sr * Y2[..., None]
    Tau = Sr * Y3[..., None]
    W = W * 8.0 ** (-(d - 3)) / 8.0
    return E.ravel(), Sg.ravel(), Tau.ravel(), W.ravel()


def _nodes(d, A, B, C, cfg: QuadratureConfig):
    lam = _decay_rates(A, B, C)
    scheme = cfg.scheme
    if scheme == "auto":
        scheme = "product" if d % 2 == 1 else "simplex"
    n = cfg.nodes_per_axis
    if scheme == "product":
        eta, sig, tau, W = _product_nodes(d, lam, n, cfg.scale)
    else:
        eta, sig, tau, W = _simplex_nodes(d, lam, n)
    r1, r2, r12 = perimetric_to_distances(eta, sig, tau)
    # weight r1 r2 r12 and the measure constant; the exponential sits in the rule
    W = W * measure_constant(d) * r1 * r2 * r12
    return r1, r2, r12, W


def integrate(f, A, B, C, d: int, cfg: QuadratureConfig = QuadratureConfig()):
    """Integral of f(r1, r2, r12) exp(-A r1 - B r2 - C r12) w(r1, r2, r12; d).

    ``f`` is vectorized; ``f=None`` means f = 1.
    """
    r1, r2, r12, W = _nodes(d, A, B, C, cfg)
    if f is None:
        return float(np.sum(W))
    return float(np.sum(W * f(r1, r2, r12)))


# ----------------------------------------------------------------------------
# expectation values
# ----------------------------------------------------------------------------

def _static_exponents(trial: TrialParams, system: SystemSpec):
    a, b, c = trial.exponents(system.Z)
    if not trial.is_integrable(system.Z):
        raise DomainError(f"trial {trial} is not square-integrable at Z={system.Z}")
    return a, b, c


def norm(trial: TrialParams, system: SystemSpec, cfg: QuadratureConfig = QuadratureConfig()):
    """Integral of |psi|^2 dV (the generating function Lambda, including 2^d pi^(d-1)/(d-2)!)."""
    a, b, c = _static_exponents(trial, system)
    return integrate(None, 2 * a, 2 * b, 2 * c, system.d, cfg)


def _checked(fn, cfg, tol):
    val = fn(cfg)
    if tol is not None:
        ref = fn(cfg.doubled())
        if abs(ref - val) > tol * max(1.0, abs(ref)):
            raise AccuracyError(
                f"node doubling changed the result by {abs(ref - val):.3e} (> {tol:g})"
            )
        return ref
    return val


def expectation_H(trial: TrialParams, system: SystemSpec,
                  cfg: QuadratureConfig = QuadratureConfig(), tol: float | None = None):
    """<psi|H_r|psi> / <psi|psi> for psi = exp(-alpha1 Z r1 - alpha2 Z r2 - beta r12)."""
    if not system.static:
        raise DomainError("quadrature expectation_H is for the static-nucleus Hamiltonian")
    a, b, c = _static_exponents(trial, system)

    def run(cfg_):
        r1, r2, r12, W = _nodes(system.d, 2 * a, 2 * b, 2 * c, cfg_)
        EL = local_energy(r1, r2, r12, a, b, c, system)
        return float(np.sum(W * EL) / np.sum(W))

    return _checked(run, cfg, tol)


def expectation_monomial(trial: TrialParams, system: SystemSpec, n: int = 0, m: int = 0,
                         k: int = 0, cfg: QuadratureConfig = QuadratureConfig(),
                         tol: float | None = None):
    """Normalized <r1^n r2^m r12^k>."""
    a, b, c = _static_exponents(trial, system)

    def run(cfg_):
        r1, r2, r12, W = _nodes(system.d, 2 * a, 2 * b, 2 * c, cfg_)
        return float(np.sum(W * r1**n * r2**m * r12**k) / np.sum(W))

    return _checked(run, cfg, tol)


# ----------------------------------------------------------------------------
# one-particle density
# ----------------------------------------------------------------------------

def sphere_area(d: int) -> float:
    """Surface area of the unit sphere in R^d."""
    return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)


def radial_marginal(r1, trial: TrialParams, system: SystemSpec, n_inner: int = 48):
    """Unnormalized P(r1) = integral of |psi|^2 w dr2 dr12 at fixed r1 (vectorized in r1).

    The r2 line is split at r2 = r1 (where the lower limit |r1 - r2| has its kink):
    Gauss-Legendre on [0, r1], Gauss-Laguerre on [r1, inf). For each r2 the r12
    integral runs over [|r1-r2|, r1+r2] with a Gauss-Jacobi rule carrying the
    endpoint powers of S**(d-3).
    """
    d = system.d
    a, b, c = _static_exponents(trial, system)
    r1 = np.atleast_1d(np.asarray(r1, dtype=float))
    if np.any(r1 <= 0):
        raise DomainError("r1 must be positive")
    h = 0.5 * (d - 3)

    xg, wg = special.roots_legendre(n_inner)
    xl, wl = _genlaguerre(n_inner, 0.0)
    uu, wu = _jacobi01(n_inner, h, h)
    rate = 2.0 * (b + c) if b + c > 0 else 2.0 * b

    R1 = r1[:, None]
    # r2 on [0, r1] and on [r1, inf)
    r2_in = 0.5 * R1 * (1.0 + xg[None, :])
    w_in = 0.5 * R1 * wg[None, :]
    r2_out = R1 + xl[None, :] / rate
    w_out = np.broadcast_to((wl / rate) * np.exp(xl), r2_out.shape)
    r2 = np.concatenate([r2_in, r2_out], axis=1)
    w2 = np.concatenate([w_in, w_out], axis=1)

    lo = np.abs(R1 - r2)
    hi = R1 + r2
    r12 = lo[..., None] + (hi - lo)[..., None] * uu
    # S^2 = (hi^2 - r12^2)(r12^2 - lo^2) / 16 ; Jacobi weight takes ((r12-lo)(hi-r12))^h
    span = (hi - lo)[..., None]
    rest = ((hi[..., None] + r12) * (r12 + lo[..., None])) ** h
    S_pow = 4.0 ** (-(d - 3)) * span ** (2 * h) * rest
    inner = np.sum(
        wu * span * r12 * S_pow * np.exp(-2.0 * c * r12), axis=-1
    )
    outer = np.sum(w2 * r2 * np.exp(-2.0 * b * r2) * inner, axis=-1)
    return measure_constant(d) * r1 * np.exp(-2.0 * a * r1) * outer


def density(r1, trial: TrialParams, system: SystemSpec,
            cfg: QuadratureConfig = QuadratureConfig(), n_inner: int = 48):
    """Normalized single-particle density rho(r1), with int rho omega_d r^(d-1) dr = 1."""
    r1_arr = np.asarray(r1, dtype=float)
    if np.any(r1_arr <= 0):
        raise DomainError("r1 must be positive")
    N = norm(trial, system, cfg)
    P = radial_marginal(r1_arr, trial, system, n_inner)
    rho = P / (N * sphere_area(system.d) * np.atleast_1d(r1_arr) ** (system.d - 1))
    return rho if r1_arr.ndim else float(rho[0])
