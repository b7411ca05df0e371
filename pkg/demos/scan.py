# optimize (alpha, beta) along Z = 2..10, warm-starting each charge from the last
from heliumd.optimize import scan_Z, optimize_static

for d in (2, 3, 4, 5):
    print(f"--- d={d}")
    for r in scan_Z(d, range(2, 11)):
        print(f"Z={r.Z:4.1f}  E={r.energy:12.6f}  alpha={r.params.alpha:.5f}  "
              f"beta={r.params.beta:+.5f}  <r12>={r.extras['r12']:.4f}")

# the one-parameter problem is a parabola in alpha
print(optimize_static(3, 2.0, parametrization="alpha").params.alpha, 1 - 5 / 32)
