import math

import numpy as np
import pytest
from scipy import integrate

from heliumd import closed_form as cf
from heliumd import finitemass as fm
from heliumd import reference
from heliumd.core import DomainError, SystemSpec
from heliumd.finitemass import ExponentTriple as T


def test_base_integral_examples():
    assert fm.base_integral(T(1, 1, 1)) == 2.0
    assert fm.base_integral(T(2, 1, 0)) == pytest.approx(8 / 3)
    assert fm.base_integral(T(1, 1, -0.4)) == pytest.approx(16 / 0.72)


def test_base_integral_against_numerical_integration():
    a, b, c = 1.0, 1.0, -0.4

    def f(tau, sigma, eta):
        r1, r2, r12 = (sigma + tau / 2) / 2, (eta + tau / 2) / 2, (eta + sigma) / 2
        return math.exp(-a * r1 - b * r2 - c * r12)

    val, _ = integrate.tplquad(f, 0, np.inf, 0, np.inf, 0, np.inf)
    assert fm.base_integral(T(a, b, c)) == pytest.approx(val, rel=1e-8)


def test_exponent_triple_convergence():
    with pytest.raises(DomainError):
        T(1.0, 1.0, -1.5)
    with pytest.raises(DomainError):
        T(-1.0, 0.5, 0.2)


def test_moment_examples():
    t = T(1, 1, 1)
    assert fm.moment(0, 0, 0, t) == 2.0
    assert fm.moment(1, 0, 0, t) == pytest.approx(2.0, rel=1e-15)
    with pytest.raises(DomainError):
        fm.moment(-1, 0, 0, t)


def test_moment_matches_finite_differences():
    t = T(1.3, 0.8, -0.2)
    h = 1e-4
    I = lambda a, b, c: fm.base_integral(T(a, b, c))
    d_c = -(I(t.a, t.b, t.c + h) - I(t.a, t.b, t.c - h)) / (2 * h)
    assert fm.moment(0, 0, 1, t) == pytest.approx(d_c, rel=1e-7)
    d_ab = (I(t.a + h, t.b + h, t.c) - I(t.a + h, t.b - h, t.c)
            - I(t.a - h, t.b + h, t.c) + I(t.a - h, t.b - h, t.c)) / (4 * h * h)
    assert fm.moment(1, 1, 0, t) == pytest.approx(d_ab, rel=1e-6)


def test_moments_positive():
    t = T(0.9, 0.4, -0.3)
    for n in range(4):
        for m in range(4):
            for k in range(4):
                assert fm.moment(n, m, k, t) > 0


def test_weight_polynomial_d3():
    assert fm.weight_polynomial(3) == {(1, 1, 1): 1.0}
    with pytest.raises(DomainError):
        fm.weight_polynomial(4)


def test_finite_mass_helium_values():
    for q in ("energy_symmetric", "energy_asymmetric"):
        r = reference.select("finite_mass", q)[0]
        E = fm.energy_appendix(r.alpha1, r.alpha2, r.beta, r.Z, m=r.m, M=r.M, e=r.e)
        assert E == pytest.approx(r.value, abs=1e-6)


def test_table3_z2_via_moments():
    r = reference.select("table3", "energy", Z=2)[0]
    system = SystemSpec(d=3, Z=2, M=r.M)
    E = fm.energy_general(T.from_alphas(r.alpha1, r.alpha2, r.beta, 2), None, system)
    assert E == pytest.approx(r.value, abs=1e-5)


@pytest.mark.parametrize("name", ["Ps-", "H-"])
def test_table4_systems(name):
    from heliumd.tables import table4_energy

    r = reference.select("table4", f"energy:{name}")[0]
    assert table4_energy(r) == pytest.approx(r.value, abs=1e-5)


def test_static_limit_reproduces_closed_form():
    E = fm.energy_appendix(0.929044, 0.929044, -0.254746, 2.0, m=1, M=1e10, e=-1)
    assert E == pytest.approx(-2.889618, abs=1e-5)
    E_inf = fm.energy_appendix(0.929044, 0.929044, -0.254746, 2.0, m=1, M=math.inf, e=-1)
    assert E_inf == pytest.approx(cf.energy_3d(0.929044, -0.254746, 2.0), rel=1e-13)


def _random_point(rng):
    Z = rng.uniform(0.8, 5.0)
    a1, a2 = rng.uniform(0.3, 1.5, size=2)
    beta = rng.uniform(-0.25, 0.4) * min(a1, a2) * Z
    m = rng.uniform(0.5, 3.0)
    M = 10 ** rng.uniform(0, 4)
    e = -rng.uniform(0.5, 1.5)
    return a1, a2, beta, Z, m, M, e


def test_appendix_equals_moment_builder():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(100):
        a1, a2, beta, Z, m, M, e = _random_point(rng)
        E1 = fm.energy_appendix(a1, a2, beta, Z, m=m, M=M, e=e)
        system = SystemSpec(d=3, Z=Z, e1=e, e2=e, m1=m, m2=m, M=M)
        E2 = fm.energy_general(T.from_alphas(a1, a2, beta, Z), None, system)
        worst = max(worst, abs(E1 - E2) / abs(E2))
    assert worst <= 1e-10


def test_rational_in_Z_identity():
    """P10/P8 and the moment builder agree at 20 charges, more than the degree count."""
    a1, a2, beta, m, M, e = 1.05, 0.7, -0.21, 1.0, 5000.0, -1.0
    for Z in np.linspace(0.9, 9.0, 20):
        system = SystemSpec(d=3, Z=Z, M=M)
        E2 = fm.energy_general(T.from_alphas(a1, a2, beta, Z), None, system)
        assert fm.energy_appendix(a1, a2, beta, Z, m=m, M=M, e=e) == pytest.approx(E2, rel=1e-11)


def test_relabel_symmetry():
    rng = np.random.default_rng(5)
    for _ in range(20):
        a, b = rng.uniform(0.5, 2.0, size=2)
        c = rng.uniform(-0.3, 0.3)
        m1, m2 = rng.uniform(0.5, 3.0, size=2)
        e1, e2 = -rng.uniform(0.5, 1.5, size=2)
        M = rng.uniform(1.0, 100.0)
        s = SystemSpec(d=3, Z=1.5, e1=e1, e2=e2, m1=m1, m2=m2, M=M)
        s_sw = SystemSpec(d=3, Z=1.5, e1=e2, e2=e1, m1=m2, m2=m1, M=M)
        for sym in (None, False):
            E = fm.energy_general(T(a, b, c), sym, s)
            E_sw = fm.energy_general(T(b, a, c), sym, s_sw)
            assert E_sw == pytest.approx(E, rel=1e-13)


def test_alpha_swap_symmetry():
    for a1, a2 in ((1.1, 0.7), (0.52, 0.148)):
        E = fm.energy_appendix(a1, a2, -0.2, 2.0)
        assert fm.energy_appendix(a2, a1, -0.2, 2.0) == pytest.approx(E, rel=1e-14)


def test_static_limit_slope():
    a, b, Z = 0.929044, -0.254746, 2.0
    ref = cf.energy_3d(a, b, Z)
    ks = np.arange(4, 11)
    dev = [abs(fm.energy_appendix(a, a, b, Z, m=1, M=10.0**k, e=-1) - ref) for k in ks]
    slope = np.polyfit(ks, np.log10(dev), 1)[0]
    assert abs(slope + 1) <= 0.05
