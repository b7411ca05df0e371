import numpy as np

from heliumd import analysis as an

S = {}
for d in (2, 3, 4, 5):
    S[d] = [an.shannon_entropy(d, Z) for Z in range(2, 11)]
    print(d, np.round(S[d], 4))

# the d=2 column predicts the others
for d in (3, 4, 5):
    pred = [an.entropy_interpolation(d, Z, s2) for Z, s2 in zip(range(2, 11), S[2])]
    print(d, "worst interpolation miss", np.max(np.abs(np.array(pred) - S[d])))

prof = an.density_profile(3, 2.0)
i = np.argmax(prof.rho * prof.r_grid**2)
print("radial peak near r =", prof.r_grid[i], " normalization", prof.normalization)
np.savetxt("density_d3_Z2.csv", np.c_[prof.r_grid, prof.rho], delimiter=",", header="r,rho", comments="")
