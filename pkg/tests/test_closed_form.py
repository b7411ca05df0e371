"""Closed forms against the quadrature oracle and against their own limits."""
import math

import numpy as np
import pytest

from heliumd import closed_form as cf
from heliumd import quadrature as qd
from heliumd.core import DomainError, SingularEvaluationError, SystemSpec, TrialParams
from heliumd.optimize import optimize_static

ANCHORS = {
    3: (0.929044, -0.254746, -2.889618, 1e-6),
    2: (1.87638, -0.53717, -11.8350, 1e-4),
    4: (0.6160175, -0.1650859, -1.26809, 1e-5),
    5: (0.460444, -0.121678, -0.7077, 1e-4),
}


def oracle(d, a, b, Z):
    return qd.expectation_H(TrialParams(a, b), SystemSpec(d=d, Z=Z))


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_anchor_energies(d):
    a, b, E, tol = ANCHORS[d]
    assert cf.energy(d, a, b, 2.0) == pytest.approx(E, abs=tol)


@pytest.mark.parametrize("d,a,b,Z,rtol", [
    (3, 1.2, -0.3, 3.0, 1e-8),
    (2, 1.5, -0.4, 4.0, 1e-6),
    (4, 0.7, -0.2, 3.0, 1e-6),
    (5, 0.5, -0.1, 3.0, 1e-8),
])
def test_named_oracle_points(d, a, b, Z, rtol):
    assert cf.energy(d, a, b, Z) == pytest.approx(oracle(d, a, b, Z), rel=rtol)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_oracle_equivalence_random(d):
    rng = np.random.default_rng(1000 + d)
    rtol = 1e-8 if d % 2 else 1e-6
    worst = 0.0
    for _ in range(50):
        Z = rng.uniform(1.0, 8.0)
        a = rng.uniform(0.3, 2.0) * 2.0 / (d - 1)
        b = a * Z * rng.uniform(-0.6, 0.6)
        E = cf.energy(d, a, b, Z)
        worst = max(worst, abs(E - oracle(d, a, b, Z)) / abs(E))
    assert worst <= rtol


def test_hartree_like_values():
    assert cf.energy_3d(1.0, 0.0, 2.0) == pytest.approx(-2.75, abs=1e-14)
    assert cf.energy_uncorrelated(3, 1.0, 2.0) == pytest.approx(-2.75, abs=1e-14)
    a = 1 - 5 / 32
    assert cf.energy_uncorrelated(3, a, 2.0) == pytest.approx(-(2 - 5 / 16) ** 2, abs=1e-14)
    assert cf.energy_5d(1.0, 0.0, 1.0) == pytest.approx(21 / 64, abs=1e-15)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_beta_zero_reduction_matches_quadrature(d):
    # the uncorrelated energies checked independently of the closed forms
    for a, Z in ((1.0, 2.0), (0.8, 3.5)):
        assert cf.energy_uncorrelated(d, a, Z) == pytest.approx(oracle(d, a, 0.0, Z), rel=1e-9)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_beta_zero_consistency(d):
    for a in (0.4, 1.0, 1.7):
        for Z in (1.0, 2.0, 6.0):
            assert cf.energy(d, a, 0.0, Z) == pytest.approx(cf.energy_uncorrelated(d, a, Z), rel=1e-13)


def test_even_d_domain():
    with pytest.raises(DomainError):
        cf.energy_2d(0.2, -0.5, 2.0)
    with pytest.raises(DomainError):
        cf.energy_4d(0.5, 1.0, 2.0)
    with pytest.raises(DomainError):
        cf.energy_uncorrelated(6, 1.0, 2.0)


def test_singular_denominator_guard():
    # beta^2 + 8 a^2 Z^2 + 5 a b Z = 0 at beta = r a Z with r^2 + 5 r + 8 = 0 has no
    # real root, so use Z = 0, beta = 0 where the whole denominator vanishes
    with pytest.raises(SingularEvaluationError):
        cf.energy_3d(1.0, 0.0, 0.0)


def test_branch_identity():
    x = np.concatenate([np.linspace(-0.99, -0.01, 50), np.linspace(0.01, 0.99, 50)])
    # sec^-1(y) = acos(1/y) on both branches; evaluate through arctan for independence
    sec_inv = np.where(x > 0, np.arctan(np.sqrt(1 / x**2 - 1)), math.pi - np.arctan(np.sqrt(1 / x**2 - 1)))
    assert np.allclose(np.arccos(x), sec_inv, atol=1e-14)


def test_norm_2d_is_full_norm_over_pi():
    for a, b, Z in ((1.87638, -0.53717, 2.0), (1.0, 0.0, 3.0), (1.2, 0.4, 2.5)):
        full = qd.norm(TrialParams(a, b), SystemSpec(d=2, Z=Z))
        assert math.pi * cf.norm_2d(a, b, Z) == pytest.approx(full, rel=1e-8)


def test_norm_2d_homogeneity():
    # degree -4 in the effective exponents (alpha Z, beta)
    a, b, Z = 1.3, -0.3, 2.0
    for k in (0.5, 2.0, 3.0):
        assert cf.norm_2d(a, k * b, k * Z) == pytest.approx(cf.norm_2d(a, b, Z) / k**4, rel=1e-12)


def test_mean_r12_2d_generating_function():
    rng = np.random.default_rng(7)
    for _ in range(10):
        Z = rng.uniform(1.0, 6.0)
        a = rng.uniform(0.5, 2.5)
        b = a * Z * rng.uniform(-0.5, 0.5)
        h = 1e-5
        dlog = (math.log(cf.norm_2d(a, b + h, Z)) - math.log(cf.norm_2d(a, b - h, Z))) / (2 * h)
        assert cf.mean_r12_2d(a, b, Z) == pytest.approx(-0.5 * dlog, abs=1e-7)


def test_mean_r12_2d_at_optima():
    for Z, ref in ((2.0, 0.4668), (10.0, 0.0770)):
        p = optimize_static(2, Z).params
        assert cf.mean_r12_2d(p.alpha, p.beta, Z) == pytest.approx(ref, abs=5e-4)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_mean_monomial_against_quadrature(d):
    a, b = 2.0 / (d - 1) * 0.9, -0.12
    Z = 2.0
    trial, system = TrialParams(a, b), SystemSpec(d=d, Z=Z)
    for n, k in ((0, 1), (1, 0), (1, 1), (0, 2)):
        ref = sum(
            math.comb(n, j) * qd.expectation_monomial(trial, system, j, n - j, k)
            for j in range(n + 1)
        )
        rtol = 1e-10 if d % 2 else 1e-6
        assert cf.mean_monomial(d, a, b, Z, n, k) == pytest.approx(ref, rel=rtol)


def test_mean_monomial_trivial_and_errors():
    assert cf.mean_monomial(4, 0.6, -0.1, 2.0, 0, 0) == 1.0
    with pytest.raises(DomainError):
        cf.mean_monomial(3, 0.9, -0.2, 2.0, -1, 0)
    with pytest.raises(DomainError):
        cf.mean_monomial(3, 0.9, -0.2, 2.0, 0, 1.5)


def test_d3_r12_uncorrelated_quadrature():
    ref = qd.expectation_monomial(TrialParams(1.0, 0.0), SystemSpec(d=3, Z=2.0), 0, 0, 1)
    assert cf.mean_monomial(3, 1.0, 0.0, 2.0, 0, 1) == pytest.approx(ref, rel=1e-6)


@pytest.mark.parametrize("d,exact", [(3, -2.903724), (2, -11.8998), (4, -1.27364), (5, -0.71050)])
def test_variational_bound(d, exact):
    assert optimize_static(d, 2.0).energy > exact
