import math

import numpy as np
import pytest

from heliumd import quadrature as qd
from heliumd.core import AccuracyError, DomainError, SystemSpec, TrialParams

OPTIMA = {
    2: TrialParams(1.8763835, -0.5371710),
    3: TrialParams(0.9290441, -0.2547460),
    4: TrialParams(0.6160175, -0.1650859),
    5: TrialParams(0.4604440, -0.1216777),
}


def test_weight_examples():
    assert qd.weight(1.0, 1.0, 1.0, 3) == pytest.approx(8 * math.pi**2)
    assert qd.weight(1.0, 1.0, 2.0, 3) == pytest.approx(16 * math.pi**2)
    assert qd.weight(1.0, 1.0, 1.0, 2) == pytest.approx(16 * math.pi / math.sqrt(3))


def test_weight_rejects_non_triangle():
    with pytest.raises(DomainError):
        qd.weight(1.0, 1.0, 2.5, 3)


def test_perimetric_round_trip():
    rng = np.random.default_rng(3)
    eta, sigma, tau = rng.exponential(size=(3, 200))
    r1, r2, r12 = qd.perimetric_to_distances(eta, sigma, tau)
    assert np.all(r1 + r2 >= r12) and np.all(r1 + r12 >= r2) and np.all(r2 + r12 >= r1)
    back = qd.distances_to_perimetric(r1, r2, r12)
    assert np.allclose(back, (eta, sigma, tau), atol=1e-14)


def test_perimetric_point_is_a_triangle():
    p = qd.PerimetricPoint(0.0, 0.0, 3.0)
    r1, r2, r12 = p.distances()
    assert (r1, r2, r12) == (0.75, 0.75, 0.0)
    with pytest.raises(DomainError):
        qd.PerimetricPoint(-1.0, 0.0, 0.0)


def test_config_validation():
    with pytest.raises(DomainError):
        qd.QuadratureConfig(nodes_per_axis=4)
    with pytest.raises(DomainError):
        qd.QuadratureConfig(scheme="tanh")


def test_anchor_energies():
    E = qd.expectation_H(TrialParams(0.929044, -0.254746), SystemSpec(d=3, Z=2))
    assert E == pytest.approx(-2.889618, abs=1e-6)
    assert qd.expectation_H(TrialParams(1.0, 0.0), SystemSpec(d=3, Z=2)) == pytest.approx(-2.75, abs=1e-8)
    E5 = qd.expectation_H(TrialParams(0.460444, -0.121678), SystemSpec(d=5, Z=2))
    assert E5 == pytest.approx(-0.7077, abs=1e-4)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_node_doubling(d):
    sys_ = SystemSpec(d=d, Z=2.0)
    tol = 1e-8 if d % 2 else 1e-6
    # raises AccuracyError if doubling moves the value by more than tol
    qd.expectation_H(OPTIMA[d], sys_, qd.QuadratureConfig(40), tol=tol)


def test_accuracy_error_on_coarse_grid():
    with pytest.raises(AccuracyError):
        qd.expectation_H(TrialParams(1.5, 1.2), SystemSpec(d=2, Z=2.0), qd.QuadratureConfig(8), tol=1e-15)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_swap_symmetry(d):
    """Swapping r1 and r2 in the integrand leaves the energy unchanged."""
    trial, sys_ = OPTIMA[d], SystemSpec(d=d, Z=2.0)
    a, b, c = trial.exponents(2.0)
    from heliumd.hamiltonian import local_energy

    r1, r2, r12, W = qd._nodes(d, 2 * a, 2 * b, 2 * c, qd.QuadratureConfig())
    E = np.sum(W * local_energy(r1, r2, r12, a, b, c, sys_)) / np.sum(W)
    Es = np.sum(W * local_energy(r2, r1, r12, a, b, c, sys_)) / np.sum(W)
    assert Es == pytest.approx(E, rel=1e-12)


def test_d2_norm_convergence_order():
    trial, sys_ = TrialParams(1.2, -0.5), SystemSpec(d=2, Z=2.0)
    ref = qd.norm(trial, sys_, qd.QuadratureConfig(96))
    errs = [abs(qd.norm(trial, sys_, qd.QuadratureConfig(n)) - ref) / ref for n in (8, 16, 32)]
    for coarse, fine in zip(errs, errs[1:]):
        assert fine <= max(coarse / 4, 1e-13)


def test_schemes_agree_for_odd_d():
    trial, sys_ = OPTIMA[5], SystemSpec(d=5, Z=2.0)
    p = qd.expectation_H(trial, sys_, qd.QuadratureConfig(40, "product"))
    s = qd.expectation_H(trial, sys_, qd.QuadratureConfig(40, "simplex"))
    assert p == pytest.approx(s, rel=1e-10)


def test_monomials():
    sys3 = SystemSpec(d=3, Z=2.0)
    assert qd.expectation_monomial(OPTIMA[3], sys3) == pytest.approx(1.0, abs=1e-14)
    assert qd.expectation_monomial(OPTIMA[3], sys3, 0, 0, 1) == pytest.approx(1.385, abs=2e-3)
    assert qd.expectation_monomial(OPTIMA[4], SystemSpec(d=4, Z=2.0), 0, 0, 1) == pytest.approx(2.754, abs=3e-3)


def test_non_integrable_trial():
    with pytest.raises(DomainError):
        qd.expectation_H(TrialParams(0.2, -1.0), SystemSpec(d=3, Z=2.0))


def test_finite_mass_rejected():
    with pytest.raises(DomainError):
        qd.expectation_H(OPTIMA[3], SystemSpec(d=3, Z=2.0, M=7294.0))


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_density_normalized(d):
    trial, sys_ = OPTIMA[d], SystemSpec(d=d, Z=2.0)
    a, _, c = trial.exponents(2.0)
    k = 2 * (a + c)
    x, w = qd._genlaguerre(64, float(d - 1))
    rho = qd.density(x / k, trial, sys_)
    total = np.sum(qd.sphere_area(d) * w * np.exp(x) / k**d * rho)
    assert total == pytest.approx(1.0, abs=1e-6)


def test_density_decays_beyond_maximum():
    trial, sys_ = OPTIMA[3], SystemSpec(d=3, Z=2.0)
    r = np.linspace(0.05, 12.0, 200)
    rho = qd.density(r, trial, sys_)
    i = int(np.argmax(rho))
    assert np.all(np.diff(rho[i:]) < 0)
    assert rho[-1] < 1e-12 * rho[i]


def test_density_domain():
    with pytest.raises(DomainError):
        qd.density(0.0, OPTIMA[3], SystemSpec(d=3, Z=2.0))


def test_sphere_area():
    assert qd.sphere_area(2) == pytest.approx(2 * math.pi)
    assert qd.sphere_area(3) == pytest.approx(4 * math.pi)
    assert qd.sphere_area(4) == pytest.approx(2 * math.pi**2)
