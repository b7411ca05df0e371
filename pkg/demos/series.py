import math

from heliumd import analysis as an
from heliumd import closed_form as cf
from heliumd.core import TrialParams

p = TrialParams(0.929044, -0.254746)
s = an.large_Z_expansion(3, p, order=4)
print("1/Z coefficients:", s.coeffs)
print("fit path:        ", an.large_Z_expansion(3, p, 2, method="fit").coeffs)

for Z in (2, 5, 20, 100):
    print(Z, s(Z), cf.energy_3d(p.alpha, p.beta, Z))

# leading coefficients when the parameters follow the hydrogenic limit
for d in (2, 3, 4):
    B0, B1 = an.exact_leading_coefficients(d)
    print(d, B0, B1, B1 / math.pi)

# expansion about the branch point of the exact energy
t = an.taylor_at_ZB(p, order=3)
print("about Z_B:", t.coeffs)
