"""O-free maps are much less rigid than GL-free maps.  Four builtin
examples, incl. a bounded analytic map whose power series does not
converge uniformly across levels.

Run: python demos/07_pathologies.py
"""

import math

import numpy as np

from ncfun import (
    MatTuple,
    builtin_map,
    hk_degree,
    hk_eval,
    homogeneous_part_eval,
    nonuniform_scale,
    nonuniform_witness,
)

# -- continuity without differentiability: (x x^t)^(1/3) -----------------
f13 = builtin_map("pow_xxt", m=3)
print("(x x^t)^(1/3) difference quotients at 0 (divergent):")
for k in (1, 3, 6):
    h = 10.0 ** -k
    q = np.linalg.norm(f13(MatTuple([np.array([[h]])])).mats[0], 2) / h
    print(f"  h=1e-{k}: {q:.1f}")

# -- C^1 but not C^2: (x x^t)^(3/2) ---------------------------------------
# scalar slices are |x|^3; first differences vanish, and the genuine
# numeric signature of the regularity ceiling is the divergence of the
# fourth-order quotient (see the decisions ledger for why second-order
# quotients cannot diverge for this 3-homogeneous map)
f32 = builtin_map("pow_xxt", alpha=1.5)
val = lambda t: float(f32(MatTuple([np.array([[t]])])).mats[0][0, 0])
for k in (1, 3, 5):
    h = 10.0 ** -k
    q4 = abs(val(2 * h) - 4 * val(h) + 6 * val(0) - 4 * val(-h) + val(-2 * h)) / h**4
    print(f"  h=1e-{k}: fourth quotient {q4:.1f}")

# -- smooth but nowhere analytic ------------------------------------------
# sum_j e^{-sqrt(2^j)} cos(2^j (x + x^t)): all derivatives exist, yet the
# Taylor coefficients outgrow every geometric bound
print("\nsmooth nonanalytic coefficient lower bounds e^(-sqrt(n)) n^n / n!:")
for n in (4, 9, 16, 25):
    print(f"  n={n}: {math.exp(-math.sqrt(n) + n * math.log(n) - math.lgamma(n + 1)):.3e}")

# -- bounded analytic, non-uniform convergence ------------------------------
# f = sin(sum_k k! (h_k + h_k^t)) is bounded by 1 and analytic on every
# level, but the series of homogeneous parts cannot converge uniformly:
# at the witness tuple scaled so that (n+1)! (r/2)^deg = pi/2, the value
# has norm 1 while every part of degree <= n vanishes.
n = 3
X = nonuniform_witness(n)
print(f"\nwitness level {n+1}: h_k(x) for k=1..{n}:",
      [int(np.count_nonzero(np.asarray(hk_eval(k, X), dtype=float))) for k in range(1, n + 1)],
      "nonzero entries (only k=n survives)")
r2 = nonuniform_scale(n)
print(f"scale r'/2 with (n+1)! (r'/2)^{hk_degree(n)} = pi/2: {r2:.6f}")
Y = MatTuple([np.asarray(m, dtype=float) * r2 for m in X.mats])
f = builtin_map("nonuniform")
fy = f(Y).mats[0]
partial = sum(homogeneous_part_eval(f, m, Y, n).mats[0] for m in range(n + 1))
print("||f(y)|| =", f"{np.linalg.norm(fy, 2):.6f}",
      "   ||f(y) - sum of parts up to n|| =", f"{np.linalg.norm(fy - partial, 2):.6f}")
