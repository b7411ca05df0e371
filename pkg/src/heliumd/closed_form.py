"""Closed-form variational energies of psi = exp(-alpha Z (r1 + r2) - beta r12).

Odd d gives rational functions of (alpha, beta, Z); even d brings in
sqrt(alpha^2 Z^2 - beta^2) and an inverse cosine. All inverse-trig terms are
written with ``acos`` on its principal range (0, pi):

    sec^-1(alpha Z / beta) = acos(beta / (alpha Z))
    pi - 2 csc^-1(alpha Z / beta) = pi - 2 asin(beta / (alpha Z)) = 2 acos(beta / (alpha Z))

The d = 4 energy uses the angular combination ``pi - 2 csc^-1(alpha Z/beta)``;
the extra ``alpha^2 Z^2`` multiplying ``pi`` in the published typesetting is
dropped (the corrected form agrees with direct quadrature to ~1e-15 and gives
-1.26809 at the Z = 2 optimum).

The uncorrelated (beta = 0) reductions are the exact limits of these
functions: ``alpha^2 Z^2 - 4 alpha Z^2/(d-1) + J_d alpha Z`` with
J_d = 3 pi/8, 5/8, 35 pi/256, 21/64 for d = 2..5.
"""
from __future__ import annotations

import math

from .core import DomainError, SingularEvaluationError

_SINGULAR_TOL = 1e-12

# <1/r12> coefficient of the beta = 0 energy, per unit alpha Z
_J_UNCORRELATED = {2: 3 * math.pi / 8, 3: 5 / 8, 4: 35 * math.pi / 256, 5: 21 / 64}


def _guard(den: float, scale: float, what: str):
    if not math.isfinite(den) or abs(den) <= _SINGULAR_TOL * max(scale, 1e-300):
        raise SingularEvaluationError(f"{what} vanishes at the requested parameters")


def _even_d_args(alpha, beta, Z):
    aZ = alpha * Z
    if not aZ > abs(beta):
        raise DomainError(f"even-d closed form needs alpha Z > |beta| (alpha Z={aZ}, beta={beta})")
    x = beta / aZ
    return aZ, math.sqrt(aZ * aZ - beta * beta), math.acos(x)


# The *_parts functions use arithmetic only, so Z may be a float, a numpy
# Polynomial or a sympy expression. Even-d parts take sqrt(a^2 Z^2 - b^2) and
# acos(b/(a Z)) precomputed in the caller's number type.

def _parts_3d(a, b, Z):
    num = (b + a * Z) * (
        b**3 + b**2 + 8 * a**3 * Z**3 - 16 * a**2 * Z**3 + 7 * a**2 * b * Z**2
        + 5 * a**2 * Z**2 - 4 * a * b * Z**2 + 4 * a * b**2 * Z + 4 * a * b * Z
    )
    den = b**2 + 8 * a**2 * Z**2 + 5 * a * b * Z
    return num, den


def _parts_5d(a, b, Z):
    At = (
        a**3 * Z**3 * (64 * (a - 1) * Z + 21)
        + a**2 * b * Z**2 * (14 * (5 * a - 2) * Z + 19)
        + b**3 * (14 * a * Z + 1)
        + a * b**2 * Z * ((42 * a - 4) * Z + 7)
        + 2 * b**4
    )
    Bt = 2 * (32 * a**3 * Z**3 + 25 * a**2 * b * Z**2 + 8 * a * b**2 * Z + b**3)
    return (b + a * Z) * At, Bt


def _parts_2d(a, b, Z, sq, ac):
    A = (
        -2 * b**5 * (b + 2) + 8 * (a - 4) * a**5 * Z**6
        + a**3 * b * Z**4 * (-9 * a * b - 10 * a + 16 * b)
        + a * b**3 * Z**2 * (3 * a * b + 14 * a + 16 * b)
        - 3 * a**3 * Z**4 * (a * (3 * b - 2) - 16 * b) * sq * ac
    )
    B = (
        2 * b**6 + 8 * a**6 * Z**6 + a**4 * b**2 * Z**4 - 11 * a**2 * b**4 * Z**2
        - 15 * a**4 * b * Z**4 * sq * ac
    )
    return (a**2 * Z**2 - b**2) * A, B


def _parts_4d(a, b, Z, sq, ac):
    q1 = sq / (a * Z)
    ang = 2 * ac  # pi - 2 csc^-1(alpha Z / beta)
    A = (
        2 * q1 * (
            16 * b**7 * (3 * b + 2) + 256 * a**7 * (4 - 3 * a) * Z**8
            + 13 * a**5 * b * Z**6 * (-303 * a * b + 102 * a + 608 * b)
            + 10 * a**3 * b**3 * Z**4 * (15 * a * b + 74 * a + 128 * b)
            - 8 * a * b**5 * Z**2 * (27 * a * b + 26 * a + 16 * b)
        )
        + 105 * a**4 * Z**5 * (
            8 * b**2 * (3 * a * b - 2 * a - 8 * b) + a**2 * Z**2 * (21 * a * b - 2 * a - 32 * b)
        ) * ang
    )
    B = (
        945 * a**5 * b * Z**5 * (8 * b**2 + 3 * a**2 * Z**2) * ang
        - 6 * q1 * (
            16 * b**8 + 256 * a**8 * Z**8 + 2639 * a**6 * b**2 * Z**6
            + 690 * a**4 * b**4 * Z**4 - 136 * a**2 * b**6 * Z**2
        )
    )
    return (a**2 * Z**2 - b**2) * A, B


def energy_3d(alpha: float, beta: float, Z: float) -> float:
    num, den = _parts_3d(alpha, beta, Z)
    _guard(den, beta**2 + 8 * (alpha * Z) ** 2 + abs(5 * alpha * beta * Z), "denominator of E_3d")
    return num / den


def energy_2d(alpha: float, beta: float, Z: float) -> float:
    aZ, sq, ac = _even_d_args(alpha, beta, Z)
    num, den = _parts_2d(alpha, beta, Z, sq, ac)
    _guard(den, 8 * aZ**6 + 2 * beta**6, "B of E_2d")
    return num / den


def energy_4d(alpha: float, beta: float, Z: float) -> float:
    aZ, sq, ac = _even_d_args(alpha, beta, Z)
    num, den = _parts_4d(alpha, beta, Z, sq, ac)
    _guard(den, 1536 * aZ**8, "B of E_4d")
    return num / den


def energy_5d(alpha: float, beta: float, Z: float) -> float:
    num, den = _parts_5d(alpha, beta, Z)
    _guard(den, 64 * abs(alpha * Z) ** 3 + 2 * abs(beta) ** 3, "B of E_5d")
    return num / den


ENERGY = {2: energy_2d, 3: energy_3d, 4: energy_4d, 5: energy_5d}


def energy(d: int, alpha: float, beta: float, Z: float) -> float:
    try:
        fn = ENERGY[d]
    except KeyError:
        raise DomainError(f"no closed form for d={d}; use quadrature.expectation_H") from None
    return fn(alpha, beta, Z)


def energy_uncorrelated(d: int, alpha: float, Z: float) -> float:
    """beta = 0 energy: alpha^2 Z^2 - 4 alpha Z^2 / (d-1) + J_d alpha Z."""
    if d not in _J_UNCORRELATED:
        raise DomainError(f"uncorrelated closed form available for d in 2..5, got {d}")
    if d == 4 and alpha <= 0:
        raise DomainError("d=4 reduction requires alpha > 0")
    return alpha**2 * Z**2 - 4 * alpha * Z**2 / (d - 1) + _J_UNCORRELATED[d] * alpha * Z


def norm_2d(alpha: float, beta: float, Z: float) -> float:
    """Lambda^(2D): integral of |psi|^2 4 r1 r2 r12 / S over the triangle domain.

    The angular constant is 4 (not 4 pi), so this equals the full d = 2 norm
    divided by pi.
    """
    a, b = alpha, beta
    aZ, sq, ac = _even_d_args(alpha, beta, Z)
    p = (aZ - b) * (aZ + b)
    num = math.pi * (sq * (-2 * b**4 + 8 * aZ**4 + 9 * aZ**2 * b**2) - 15 * aZ**4 * b * ac)
    return num / (16 * aZ**2 * p**3.5)


def mean_r12_2d(alpha: float, beta: float, Z: float) -> float:
    a, b = alpha, beta
    aZ, sq, ac = _even_d_args(alpha, beta, Z)
    num = (
        -4 * b**7 - 81 * aZ**6 * b + 53 * aZ**4 * b**3 + 32 * aZ**2 * b**5
        + 15 * aZ**4 * (6 * b**2 + aZ**2) * sq * ac
    )
    den = 2 * (aZ**2 - b**2) * (
        2 * b**6 + 8 * aZ**6 + aZ**4 * b**2 - 11 * aZ**2 * b**4 - 15 * aZ**4 * b * sq * ac
    )
    _guard(den, 16 * aZ**8, "denominator of <r12>_2d")
    return num / den


# ----------------------------------------------------------------------------
# generating function and moments
# ----------------------------------------------------------------------------

def generating_norm(d: int, alpha: float, beta: float, Z: float) -> float:
    """Lambda_d(alpha, beta) = integral of |psi|^2 dV, full measure constant included."""
    from . import finitemass, quadrature
    from .core import SystemSpec, TrialParams

    if d == 2:
        return math.pi * norm_2d(alpha, beta, Z)
    if d % 2 == 1:
        return quadrature.measure_constant(d) * finitemass.norm_static(alpha, beta, Z, d)
    return quadrature.norm(TrialParams(alpha, beta), SystemSpec(d=d, Z=Z))


def _central_weights(n: int):
    return [(-1) ** i * math.comb(n, i) for i in range(n + 1)], [n / 2 - i for i in range(n + 1)]


def _mixed_difference(f, x, y, n, k, hx, hy):
    cx, sx = _central_weights(n)
    cy, sy = _central_weights(k)
    total = 0.0
    for wi, si in zip(cx, sx):
        for wj, sj in zip(cy, sy):
            total += wi * wj * f(x + si * hx, y + sj * hy)
    return total / (hx**n * hy**k)


def _richardson_partial(f, x, y, n, k, base=None):
    """d^n/dx^n d^k/dy^k f by central differences with one Richardson step (O(h^4))."""
    if n == 0 and k == 0:
        return f(x, y)
    order = n + k
    if base is None:
        base = {1: 1e-4, 2: 1e-3}.get(order, 1e-2)
    hx = base * max(1.0, abs(x))
    hy = base * max(1.0, abs(y))
    coarse = _mixed_difference(f, x, y, n, k, hx, hy)
    fine = _mixed_difference(f, x, y, n, k, hx / 2, hy / 2)
    return (4.0 * fine - coarse) / 3.0


def mean_monomial(d: int, alpha: float, beta: float, Z: float, n: int, k: int) -> float:
    """<(r1 + r2)^n r12^k> from derivatives of the generating norm.

    Exact moment sums for odd d; Richardson-extrapolated central differences of
    Lambda for even d.
    """
    for p in (n, k):
        if int(p) != p or p < 0:
            raise DomainError("powers must be nonnegative integers")
    n, k = int(n), int(k)
    if n == 0 and k == 0:
        return 1.0
    if d % 2 == 1:
        from . import finitemass

        t = finitemass.ExponentTriple(2 * alpha * Z, 2 * alpha * Z, 2 * beta)
        w = finitemass.weight_polynomial(d)
        num = 0.0
        for j in range(n + 1):
            c = math.comb(n, j)
            for (i1, i2, i3), coef in w.items():
                num += c * coef * finitemass.moment(i1 + j, i2 + n - j, i3 + k, t)
        den = sum(coef * finitemass.moment(i1, i2, i3, t) for (i1, i2, i3), coef in w.items())
        return num / den
    lam = lambda a, b: generating_norm(d, a, b, Z)
    deriv = _richardson_partial(lam, alpha, beta, n, k)
    return deriv * (-1.0 / (2.0 * Z)) ** n * (-0.5) ** k / lam(alpha, beta)
