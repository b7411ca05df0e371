"""Reduced three-body kinetic operator applied to a single correlated exponential.

For ``phi = exp(-a r1 - b r2 - c r12)`` every derivative is analytic, so
``H phi / phi`` is a short rational function of the three distances. Multiplied
by ``r1 r2 r12`` it becomes a polynomial; :func:`local_energy_polynomial` returns
that polynomial as ``{(i, j, k): coefficient}`` for ``r1**i r2**j r12**k``.

The cross-derivative coefficients use ``(r2**2 + r12**2 - r1**2) / (r2 r12)`` for
the ``d_r12 d_r2`` term, the form required by the 1 <-> 2 symmetry of the
operator.
"""
from __future__ import annotations

import math
from collections import defaultdict

import numpy as np

from .core import SystemSpec


def kinetic_factors(system: SystemSpec) -> tuple[float, float, float, float]:
    """Return (K1, K2, K12, 1/M): inverse reduced masses of the three pairs and 1/M."""
    inv_M = 0.0 if math.isinf(system.M) else 1.0 / system.M
    k1 = 1.0 / system.m1 + inv_M
    k2 = 1.0 / system.m2 + inv_M
    k12 = 1.0 / system.m1 + 1.0 / system.m2
    return k1, k2, k12, inv_M


def local_energy(r1, r2, r12, a, b, c, system: SystemSpec):
    """``(H phi)/phi`` evaluated pointwise (arrays broadcast)."""
    d = system.d
    k1, k2, k12, inv_M = kinetic_factors(system)
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    r12 = np.asarray(r12, dtype=float)
    lap = (
        k1 * (a * a - (d - 1) * a / r1)
        + k2 * (b * b - (d - 1) * b / r2)
        + k12 * (c * c - (d - 1) * c / r12)
        + a * c * (r1**2 + r12**2 - r2**2) / (system.m1 * r1 * r12)
        + b * c * (r2**2 + r12**2 - r1**2) / (system.m2 * r2 * r12)
        + a * b * inv_M * (r1**2 + r2**2 - r12**2) / (r1 * r2)
    )
    Z = system.Z
    pot = system.e1 * Z / r1 + system.e2 * Z / r2 + system.e1 * system.e2 / r12
    return -0.5 * lap + pot


def local_energy_polynomial(a, b, c, system: SystemSpec) -> dict:
    """``r1 r2 r12 * (H phi)/phi`` as a sparse polynomial ``{(i, j, k): coeff}``."""
    d = system.d
    k1, k2, k12, inv_M = kinetic_factors(system)
    Z = system.Z
    poly = defaultdict(float)
    h = -0.5
    poly[(1, 1, 1)] += h * (k1 * a * a + k2 * b * b + k12 * c * c)
    poly[(0, 1, 1)] += h * (-(d - 1) * k1 * a) + system.e1 * Z
    poly[(1, 0, 1)] += h * (-(d - 1) * k2 * b) + system.e2 * Z
    poly[(1, 1, 0)] += h * (-(d - 1) * k12 * c) + system.e1 * system.e2
    # a c / m1 * r2 (r1^2 + r12^2 - r2^2)
    t = h * a * c / system.m1
    poly[(2, 1, 0)] += t
    poly[(0, 1, 2)] += t
    poly[(0, 3, 0)] -= t
    # b c / m2 * r1 (r2^2 + r12^2 - r1^2)
    t = h * b * c / system.m2
    poly[(1, 2, 0)] += t
    poly[(1, 0, 2)] += t
    poly[(3, 0, 0)] -= t
    # a b / M * r12 (r1^2 + r2^2 - r12^2)
    t = h * a * b * inv_M
    if t:
        poly[(2, 0, 1)] += t
        poly[(0, 2, 1)] += t
        poly[(0, 0, 3)] -= t
    return {key: val for key, val in poly.items() if val != 0.0}
