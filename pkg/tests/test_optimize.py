import math

import numpy as np
import pytest

from heliumd import closed_form as cf
from heliumd import optimize as opt
from heliumd.core import ConfigurationError, SystemSpec, TrialParams


def test_d3_optimum_from_hartree_start():
    res = opt.optimize_static(3, 2.0, starts=[TrialParams(1.0, 0.0)])
    assert res.energy == pytest.approx(-2.889618, abs=1e-5)
    assert res.params.alpha == pytest.approx(0.929044, abs=1e-3)
    assert res.params.beta == pytest.approx(-0.254746, abs=1e-3)
    assert res.converged
    assert res.nu1 == -res.params.alpha * 2.0 and res.nu2 == -res.params.beta


def test_one_parameter_minimum():
    res = opt.optimize_static(3, 2.0, parametrization="alpha")
    assert res.params.alpha == pytest.approx(0.84375, abs=1e-6)
    assert res.energy == pytest.approx(-2.84765625, abs=1e-12)


def test_positronium_ion_from_reference_start():
    system = SystemSpec(d=3, Z=1.0, M=1.0)
    start = TrialParams(0.520138, -0.005991, alpha2=0.147915)
    res = opt.minimize(opt.finite_mass_problem(system, [start]))
    assert res.energy == pytest.approx(-0.256692, abs=1e-5)


def test_reported_optimum_is_local_minimum():
    prob = opt.static_problem(3, 2.0)
    res = opt.minimize(prob)
    x = opt.vector_from_params(res.params, prob.parametrization)
    g, H = opt.gradient_and_hessian(prob, x)
    assert np.all(np.abs(g) <= 1e-5)
    assert np.all(np.linalg.eigvalsh(H) > 0)


@pytest.mark.parametrize("d", [2, 5])
def test_warm_start_path_independence(d):
    Zs = list(range(2, 11))
    up = opt.scan_Z(d, Zs)
    down = opt.scan_Z(d, Zs[::-1])[::-1]
    for a, b in zip(up, down):
        assert a.energy == pytest.approx(b.energy, abs=1e-7)


def test_scan_requires_sorted_grid():
    with pytest.raises(ConfigurationError):
        opt.scan_Z(3, [2.0, 4.0, 3.0])


def test_adding_starts_never_hurts():
    model = opt.static_model(4, 3.0)
    starts = opt.start_lattice(4)
    previous = math.inf
    for k in range(1, len(starts) + 1):
        E = opt.minimize(opt.OptimizationProblem(model, starts[:k], 3.0)).energy
        assert E <= previous + 1e-13
        previous = E


def test_infeasible_starts():
    prob = opt.static_problem(2, 2.0, starts=[TrialParams(0.1, 5.0)])
    assert prob.objective([0.1, 5.0]) == math.inf
    with pytest.raises(ConfigurationError):
        opt.minimize(prob)


def test_unknown_parametrization():
    with pytest.raises(ConfigurationError):
        opt.OptimizationProblem(lambda p: 0.0, [], 2.0, parametrization="gamma")


def test_bounds_respected():
    prob = opt.static_problem(3, 2.0, bounds=[(0.95, 1.5), (-1.0, 1.0)])
    res = opt.minimize(prob)
    assert res.params.alpha >= 0.95


def test_deterministic():
    a = opt.optimize_static(5, 3.0)
    b = opt.optimize_static(5, 3.0)
    assert a.energy == b.energy and a.params == b.params


@pytest.mark.parametrize("d,Z,ref", [(3, 10, -93.8948), (2, 10, -377.009), (5, 6, -8.05240)])
def test_scan_examples(d, Z, ref):
    res = opt.optimize_static(d, float(Z))
    # printed values carry fewer digits than the minimum; compare at the last printed digit
    digits = len(str(ref).split(".")[1])
    assert abs(res.energy - ref) < 10.0 ** (-digits)


def test_quadrature_model_matches_closed_form_optimum():
    from heliumd.quadrature import QuadratureConfig

    res_q = opt.optimize_static(3, 2.0, quad_cfg=QuadratureConfig(24))
    res_c = opt.optimize_static(3, 2.0)
    assert res_q.energy == pytest.approx(res_c.energy, abs=1e-9)
    assert cf.energy_3d(res_q.params.alpha, res_q.params.beta, 2.0) == pytest.approx(res_q.energy, abs=1e-9)
