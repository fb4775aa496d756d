"""The derivative functions behind the solver.

The optimal weights come from a family of strictly increasing piecewise
linear functions, one per level: the derivative of the partially minimised
quality measure with respect to the last weight.  This script builds the
family for a small instance and shows the structural facts the algorithm
relies on: negative value at zero, a slope floor that tightens with the
level, an eventually-linear tail, and piece counts that stay small.
"""

from fractions import Fraction

import numpy as np

from lineprox import build_chain, instance_from_gaps

F = Fraction

inst = instance_from_gaps([F(1), F(1), F(1), F(2), F(1, 2)])
chain = build_chain(inst)

for f in chain.functions:
    i = f.level
    d = inst.gaps[i - 1]
    floor = (2 + F(2, i)) * d * d
    print(f"R_{i}: {f.piece_count} pieces, value at 0 = {f.value_at_zero()}, "
          f"slope floor (2 + 2/{i})*d^2 = {floor}")
    print("    from_x slope intercept")
    for line in f.dump().splitlines():
        print(f"    {line}")
    assert f.value_at_zero() < 0
    assert all(s >= floor for s in f.slopes)
    assert f.slopes[-1] == floor and f.intercepts[-1] == 0

print()
print("Piece counts on random instances stay small even at n = 2000:")
rng = np.random.default_rng(0)
gaps = [float(g) for g in rng.integers(1, 51, size=1999)]
big = build_chain(instance_from_gaps(gaps))
print(f"  peak piece count over {len(big.functions)} levels: {big.max_pieces}")
