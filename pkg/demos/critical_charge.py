# where does the two-electron ion stop being bound?
from heliumd import analysis as an
from heliumd.core import hydrogen_ground_energy
from heliumd.optimize import optimize_static

for d in (2, 3, 4, 5):
    Zc = an.critical_charge(d)
    gap = optimize_static(d, Zc).energy - hydrogen_ground_energy(Zc, d)
    print(f"d={d}  Z_c={Zc:.6f}  gap at Z_c={gap:.1e}")

print("exact d=3 value for comparison:", an.EXACT_CRITICAL_CHARGE_3D)

# letting the two electrons have different orbitals lowers Z_c, slowly (~1 min)
# print(an.critical_charge(3, parametrization="alpha1_alpha2_beta"))
