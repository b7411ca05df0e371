# closed-form energies for d = 2..5, checked against brute-force quadrature
from heliumd import closed_form as cf, quadrature as qd
from heliumd.core import SystemSpec, TrialParams

pts = {2: (1.87638, -0.53717), 3: (0.929044, -0.254746),
       4: (0.6160175, -0.1650859), 5: (0.460444, -0.121678)}

for d, (a, b) in pts.items():
    E = cf.energy(d, a, b, 2.0)
    Eq = qd.expectation_H(TrialParams(a, b), SystemSpec(d=d, Z=2.0))
    print(f"d={d}  closed={E:.8f}  quad={Eq:.8f}  diff={abs(E - Eq):.1e}")

# no correlation: the textbook screening result
print(cf.energy_uncorrelated(3, 1 - 5 / 32, 2.0), -(2 - 5 / 16) ** 2)
