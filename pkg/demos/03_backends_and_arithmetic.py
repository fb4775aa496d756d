"""Explicit vs implicit backend, float vs exact arithmetic.

The explicit backend stores every linear piece and is near-linear on
random data.  The implicit backend stores two 3x3 matrices per level and
guarantees O(n^2) operations regardless of how pieces might grow, at the
cost of a chain walk per query.

Both backends run over floats or exact rationals.  The implicit walk's
arithmetic is chosen independently of the instance scalars: matrix chains
amplify rounding errors exponentially on unfavourable instances, so float
instances are walked with exact integer arithmetic whenever that is cheap
(small integer gaps, n <= 640) and with fast machine floats beyond, where
the certificate reports whether the answer survived.
"""

import time
from fractions import Fraction

import numpy as np

from lineprox import build_implicit, instance_from_gaps, solve

rng = np.random.default_rng(42)
gaps = [int(g) for g in rng.integers(1, 51, size=499)]

inst_f = instance_from_gaps([float(g) for g in gaps])
inst_e = instance_from_gaps([Fraction(g) for g in gaps])

t0 = time.perf_counter()
explicit = solve(inst_f, backend="explicit")
t_explicit = time.perf_counter() - t0

t0 = time.perf_counter()
implicit = solve(inst_f, backend="implicit")
t_implicit = time.perf_counter() - t0

dev = max(abs(a - b) for a, b in zip(explicit.weights, implicit.weights))
print(f"n = 500 float:   explicit {t_explicit*1e3:7.1f} ms   "
      f"implicit {t_implicit*1e3:7.1f} ms   max weight deviation {dev:.2e}")

t0 = time.perf_counter()
exact = solve(inst_e, backend="explicit")
t_exact = time.perf_counter() - t0
worst = max(abs(float(a) - b) for a, b in zip(exact.weights, explicit.weights))
print(f"n = 500 exact:   explicit {t_exact*1e3:7.1f} ms   "
      f"float solution is within {worst:.2e} of the exact one")

print()
print("The implicit backend's guaranteed O(n^2) total work, measured:")
for n in (200, 400, 800):
    inst = instance_from_gaps([float(g) for g in rng.integers(1, 51, size=n - 1)])
    chain = build_implicit(inst, core="exact")
    for level in range(2, n):
        chain.query_inverse(level, 0.0)
    print(f"  n = {n:4}: {chain.ops:>9} walk steps")

print()
print("Why the float walk is only a fallback: pure machine-float chain")
print("walks lose digits exponentially with depth on bad instances, e.g.")
inst = instance_from_gaps([float(g) for g in rng.integers(1, 51, size=499)])
good = build_implicit(inst, core="exact")
fast = build_implicit(inst, core="float")
level = inst.n_points - 1
a = good.query_inverse(level, 0.0)
b = fast.query_inverse(level, 0.0)
print(f"  R_{level}^-1(0): exact-core {a:.15g}, float-core {b:.15g}")
