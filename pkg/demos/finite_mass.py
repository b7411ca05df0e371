# three-body energies with a moving third particle
from heliumd import finitemass as fm, reference
from heliumd.core import SystemSpec
from heliumd.optimize import finite_mass_problem, minimize, start_lattice
from heliumd.tables import table4_energy

M_He = 7294.261824
print(fm.energy_appendix(0.92887416, 0.92887416, -0.2546058, 2.0, M=M_He))
print(fm.energy_appendix(1.1031235, 0.72010632, -0.207181825, 2.0, M=M_He))

res = minimize(finite_mass_problem(SystemSpec(d=3, Z=2.0, M=M_He),
                                   start_lattice(3, "alpha1_alpha2_beta")))
print("optimized:", res.energy, res.params)

for r in reference.select("table4"):
    if r.quantity.startswith("energy:"):
        print(r.quantity, table4_energy(r), "printed", r.value)
# H2+ doesn't come out right with this trial function at the printed parameters
