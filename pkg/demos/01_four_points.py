"""Four points on a line, and why the middle weight can blow up.

Take points 0, 1, 1+eps, 2+eps: the outer pairs are unit distance apart
and the middle pair sits eps apart.  Symmetry pins the outer weights at 1,
and zeroing the middle point imbalances requires the middle weight to be
1/eps, which grows without bound as the points approach each other.
"""

from fractions import Fraction

from lineprox import build_instance, compute_q, solve

for eps in (Fraction(1, 2), Fraction(1, 10), Fraction(1, 100), Fraction(1, 10**6)):
    points = [Fraction(0), Fraction(1), 1 + eps, 2 + eps]
    inst = build_instance(points)
    res = solve(inst)
    print(f"eps = {str(eps):>10}: weights = {tuple(str(w) for w in res.weights)}, "
          f"Q = {res.q_value}")

print()
print("The optimum is certified by its KKT multipliers:")
inst = build_instance([0.0, 1.0, 1.5, 2.5])
res = solve(inst)
cert = res.certificate
print(f"  weights        {res.weights}")
print(f"  Q              {res.q_value}")
print(f"  multipliers    {cert.multipliers}")
print(f"  stationarity   {cert.stationarity_residual}")
print(f"  valid          {cert.valid}")

print()
print("A slightly different weight vector is feasible but not optimal:")
w = (1.0, 1.0, 1.0)
print(f"  Q(1, 1, 1) = {compute_q(inst, w)}  vs  optimal {res.q_value}")
