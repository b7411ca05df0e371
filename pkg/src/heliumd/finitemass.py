"""Analytic variational energy of a three-body Coulomb system with finite masses (d = 3).

Trial function (singlet-like spatial symmetrization)::

    psi = (1 + P12) exp(-a r13 - b r23 - c r12)

Two independent routes produce the energy:

* :func:`energy_general` expands ``H phi`` into monomials and sums exact moments
  of the base integral ``I(a, b, c) = 16 / ((a+b)(a+c)(b+c))`` over the
  direct and exchange blocks. Works for arbitrary masses and charges.
* :func:`energy_appendix` evaluates the closed rational function P10(Z)/P8(Z)
  with the published coefficients (equal masses and charges of particles 1, 2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .core import DomainError, SingularEvaluationError, SystemSpec
from .hamiltonian import local_energy_polynomial

NUCLEAR_MASS_HE4 = 7294.261824  # alpha-particle mass used for the Z = 2 row (a.u.)


@dataclass(frozen=True)
class ExponentTriple:
    """Decay rates of r13, r23 and r12."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        if not (self.a + self.b > 0 and self.a + self.c > 0 and self.b + self.c > 0):
            raise DomainError(f"{self} violates a+b>0, a+c>0, b+c>0")

    def __add__(self, other: "ExponentTriple") -> "ExponentTriple":
        return ExponentTriple(self.a + other.a, self.b + other.b, self.c + other.c)

    def swapped(self) -> "ExponentTriple":
        return ExponentTriple(self.b, self.a, self.c)

    @classmethod
    def from_alphas(cls, alpha1, alpha2, beta, Z):
        return cls(alpha1 * Z, alpha2 * Z, beta)


def base_integral(t: ExponentTriple) -> float:
    return 16.0 / ((t.a + t.b) * (t.a + t.c) * (t.b + t.c))


@lru_cache(maxsize=4096)
def _moment(n, m, k, a, b, c):
    p, q, r = a + b, a + c, b + c
    # d/da = d/dp + d/dq, d/db = d/dp + d/dr, d/dc = d/dq + d/dr acting on 1/(p q r)
    total = 0.0
    for i in range(n + 1):
        ci = math.comb(n, i)
        for j in range(m + 1):
            cj = math.comb(m, j)
            np_ = i + j
            fp = math.factorial(np_) / p ** (np_ + 1)
            for l in range(k + 1):
                nq = n - i + l
                nr = m - j + k - l
                total += (
                    ci * cj * math.comb(k, l) * fp
                    * math.factorial(nq) / q ** (nq + 1)
                    * math.factorial(nr) / r ** (nr + 1)
                )
    return 16.0 * total


def moment(n: int, m: int, k: int, t: ExponentTriple) -> float:
    """Integral of r1^n r2^m r12^k exp(-a r1 - b r2 - c r12) over the triangle domain.

    Equal to (-d/da)^n (-d/db)^m (-d/dc)^k I(a, b, c), evaluated exactly through
    the partial-fraction structure of I.
    """
    for p in (n, m, k):
        if int(p) != p or p < 0:
            raise DomainError("moment powers must be nonnegative integers")
    if not (t.a + t.b > 0 and t.a + t.c > 0 and t.b + t.c > 0):
        raise DomainError(f"{t} violates a+b>0, a+c>0, b+c>0")
    return _moment(int(n), int(m), int(k), float(t.a), float(t.b), float(t.c))


def weight_polynomial(d: int) -> dict:
    """r1 r2 r12 S^(d-3) as ``{(i, j, k): coeff}`` for odd d (no angular constant)."""
    if d % 2 == 0 or d < 3:
        raise DomainError("the weight is polynomial only for odd d >= 3")
    # 16 S^2 = 2(r1^2 r2^2 + r1^2 r12^2 + r2^2 r12^2) - r1^4 - r2^4 - r12^4
    s2 = {(2, 2, 0): 2 / 16, (2, 0, 2): 2 / 16, (0, 2, 2): 2 / 16,
          (4, 0, 0): -1 / 16, (0, 4, 0): -1 / 16, (0, 0, 4): -1 / 16}
    poly = {(1, 1, 1): 1.0}
    for _ in range((d - 3) // 2):
        poly = _poly_mul(poly, s2)
    return poly


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for (i1, j1, k1), c1 in p.items():
        for (i2, j2, k2), c2 in q.items():
            key = (i1 + i2, j1 + j2, k1 + k2)
            out[key] = out.get(key, 0.0) + c1 * c2
    return out


def _divide_r1r2r12(poly: dict) -> dict:
    out = {}
    for (i, j, k), v in poly.items():
        out[(i - 1, j - 1, k - 1)] = v
    return out


def _expect(poly: dict, t: ExponentTriple) -> float:
    return sum(coef * moment(i, j, k, t) for (i, j, k), coef in poly.items())


def matrix_elements(ti: ExponentTriple, tj: ExponentTriple, system: SystemSpec):
    """(<phi_i|H|phi_j>, <phi_i|phi_j>) without the angular constant."""
    w = weight_polynomial(system.d)
    loc = local_energy_polynomial(tj.a, tj.b, tj.c, system)  # r1 r2 r12 * H phi_j / phi_j
    ham = _poly_mul(_divide_r1r2r12(w), loc)
    s = ti + tj
    return _expect(ham, s), _expect(w, s)


def energy_general(t1: ExponentTriple, t2: ExponentTriple | None, system: SystemSpec) -> float:
    """Variational energy of psi = phi(t1) + phi(t2) for arbitrary masses and charges.

    ``t2=None`` uses the exchange partner ``t1.swapped()``; pass ``t2=False`` for a
    single unsymmetrized exponential.
    """
    if t2 is None:
        t2 = t1.swapped()
    terms = [t1] if t2 is False else [t1, t2]
    num = den = 0.0
    for ti in terms:
        for tj in terms:
            h, s = matrix_elements(ti, tj, system)
            num += h
            den += s
    return num / den


def energy_static(alpha1, alpha2, beta, Z, d=3) -> float:
    """Symmetrized static-nucleus He-like energy via the moment builder."""
    t = ExponentTriple.from_alphas(alpha1, alpha2, beta, Z)
    return energy_general(t, None if alpha1 != alpha2 else False, SystemSpec(d=d, Z=Z))


def norm_static(alpha, beta, Z, d=3) -> float:
    """Integral of exp(-2 alpha Z (r1+r2) - 2 beta r12) r1 r2 r12 S^(d-3) (no angular constant)."""
    t = ExponentTriple(2 * alpha * Z, 2 * alpha * Z, 2 * beta)
    return _expect(weight_polynomial(d), t)


# ----------------------------------------------------------------------------
# published closed form, equal masses m and charges e for particles 1 and 2
# ----------------------------------------------------------------------------

def appendix_coefficients(alpha1, alpha2, beta, m, M, e):
    """Return (c10, c8): coefficient lists of P10(Z) and P8(Z), index = power of Z.

    Every coefficient is linear in (m M, m, M); for M = inf all of them are
    divided by M, i.e. evaluated at (m M, m, M) -> (m, 0, 1).
    """
    if math.isinf(M):
        return _coefficients(alpha1, alpha2, beta, 0.0, 1.0, m, e)
    return _coefficients(alpha1, alpha2, beta, m, M, m * M, e)


def _coefficients(alpha1, alpha2, beta, m, M, mM, e):
    s = alpha1 + alpha2
    p = alpha1 * alpha2
    b = beta
    e2 = e * e
    c10 = [0.0] * 11
    c10[10] = s**2 * (s**6 * (s * (2 * e * mM + (m + M) * s) - 2 * (m + M) * p)
                      + 128 * p**3 * e * mM * s + 128 * p**4 * (m + M))
    c10[9] = s * (
        s**3 * (p * s**2 * (s * (2 * e2 * mM - 23 * b * m - 21 * b * M) + 4 * b * e * mM)
                + 2 * p**2 * (s * (b * M + e2 * mM) + 192 * b * e * mM)
                + b * s**4 * (28 * e * mM + 13 * (m + M) * s))
        + 8 * p**3 * s * (s * (5 * e2 * mM + 58 * b * (m + M)) + 40 * b * e * mM)
        + 160 * p**4 * b * M)
    c10[8] = b * (
        s**3 * (2 * p * s**2 * (s * (13 * e2 * mM - 55 * b * m - 42 * b * M) + 212 * b * e * mM)
                + 4 * p**2 * (s * (35 * e2 * mM + 156 * b * m + 161 * b * M) + 336 * b * e * mM)
                + s**4 * (s * (2 * e2 * mM + 73 * b * m + 75 * b * M) + 172 * b * e * mM))
        + 16 * p**3 * s * (s * (9 * e2 * mM + 26 * b * m + 64 * b * M) + 8 * b * e * mM)
        + 64 * p**4 * b * M)
    c10[7] = b**2 * s * (
        32 * p**3 * (26 * b * M + 5 * e2 * mM)
        + s * (8 * p * s**2 * (s * (33 * e2 * mM + 11 * b * m + 29 * b * M) + 236 * b * e * mM)
               + 8 * p**2 * (s * (79 * e2 * mM + 138 * b * m + 256 * b * M) + 168 * b * e * mM)
               + s**4 * (s * (26 * e2 * mM + 231 * b * m + 257 * b * M) + 732 * b * e * mM)))
    c10[6] = 2 * b**3 * (
        32 * p**3 * (4 * b * M + e2 * mM)
        + s * (4 * p * s**2 * (s * (139 * e2 * mM + 70 * b * m + 193 * b * M) + 376 * b * e * mM)
               + 8 * p**2 * (s * (67 * e2 * mM + 30 * b * m + 166 * b * M) + 24 * b * e * mM)
               + s**4 * (s * (93 * e2 * mM + 265 * b * m + 338 * b * M) + 1012 * b * e * mM)))
    c10[5] = 2 * b**4 * s * (
        16 * p**2 * (53 * b * M + 26 * e2 * mM)
        + 4 * p * s * (s * (283 * e2 * mM + 64 * b * m + 388 * b * M) + 256 * b * e * mM)
        + s**3 * (s * (363 * e2 * mM + 412 * b * m + 707 * b * M) + 1648 * b * e * mM))
    c10[4] = 4 * b**5 * (
        16 * p**2 * (7 * b * M + 4 * e2 * mM)
        + 4 * p * s * (s * (153 * e2 * mM + 8 * b * (m + 25 * M)) + 32 * b * e * mM)
        + s**3 * (s * (403 * e2 * mM + 188 * b * m + 549 * b * M) + 752 * b * e * mM))
    c10[3] = 8 * b**6 * s * (
        4 * p * (54 * b * M + 43 * e2 * mM)
        + s * (s * (265 * e2 * mM + 44 * b * m + 298 * b * M) + 176 * b * e * mM))
    c10[2] = 16 * b**7 * (
        4 * p * (6 * b * M + 5 * e2 * mM)
        + s * (s * (103 * e2 * mM + 4 * b * m + 106 * b * M) + 16 * b * e * mM))
    c10[1] = 704 * b**8 * s * (b * M + e2 * mM)
    c10[0] = 128 * b**9 * (b * M + e2 * mM)

    c8 = [0.0] * 9
    c8[8] = 2 * mM * s**2 * (64 * p**3 + s**6)
    c8[7] = 2 * b * mM * s * (80 * p**3 + p * s**4 + 192 * p**2 * s**2 + 13 * s**6)
    c8[6] = 2 * b**2 * mM * (32 * p**3 + 202 * p * s**4 + 432 * p**2 * s**2 + 73 * s**6)
    c8[5] = 2 * b**3 * mM * s * (336 * p**2 + 664 * p * s**2 + 295 * s**4)
    c8[4] = 4 * b**4 * mM * (48 * p**2 + 424 * p * s**2 + 361 * s**4)
    c8[3] = 16 * b**5 * mM * s * (64 * p + 127 * s**2)
    c8[2] = 32 * b**6 * mM * (8 * p + 51 * s**2)
    c8[1] = 704 * b**7 * mM * s
    c8[0] = 128 * b**8 * mM
    return c10, c8


def energy_appendix(alpha1, alpha2, beta, Z, m=1.0, M=NUCLEAR_MASS_HE4, e=-1.0) -> float:
    """E = P10(Z) / P8(Z) from the published coefficient table."""
    c10, c8 = appendix_coefficients(alpha1, alpha2, beta, m, M, e)
    num = sum(c * Z**i for i, c in enumerate(c10))
    den = sum(c * Z**i for i, c in enumerate(c8))
    scale = max(abs(c * Z**i) for i, c in enumerate(c8))
    if abs(den) <= 1e-12 * scale:
        raise SingularEvaluationError("P8(Z) vanishes")
    return num / den
