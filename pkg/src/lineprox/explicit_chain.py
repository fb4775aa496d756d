"""Explicit construction of the derivative-function chain.

``extend`` turns the level-i function R_i into R_{i+1} using the two-case
recursion.  Writing xi = 2*d_i*d_{i+1} and w0 = R_i^{-1}(0):

* Case 1 (w0 >= 1): the pair constraint never binds and

      R_{i+1}(x) = 4*d_{i+1}^2*x - xi*R_i^{-1}(xi*x),

  so each piece (s, c) of R_i at x-coordinates >= w0 maps to a piece with
  slope ``4*d_{i+1}^2 - xi^2/s`` and intercept ``xi*c/s``, on the interval
  obtained by dividing R_i's value range by xi.

* Case 2 (w0 < 1): let ws solve ws + R_i(ws)/xi = 1.  Above ``1 - ws`` the
  Case 1 formula applies starting from the pieces of R_i at ws; below it
  the binding constraint substitutes w_i = 1 - w_{i+1} and

      R_{i+1}(x) = -R_i(1 - x) + (2*xi + 4*d_{i+1}^2)*x - xi,

  so the pieces of R_i covering [ws, 1] are traversed in reverse, each
  contributing slope ``s + 2*xi + 4*d_{i+1}^2`` and intercept
  ``-(s + c + xi)``.  A breakpoint is created at ``1 - ws`` where both
  branches agree.

The number of pieces can at most double per level; the chain records the
maximum piece count it ever produced.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass

from .instance import Instance
from .numerics import ToleranceConfig, approx_ge
from .plf import PLF, PLFBuilder, make_r2


@dataclass(frozen=True)
class ExplicitChain:
    """Derivative functions for levels 2 .. n-1 plus the peak piece count."""

    functions: tuple
    max_pieces: int

    @property
    def top_level(self) -> int:
        return len(self.functions) + 1

    def function(self, level: int) -> PLF:
        if not 2 <= level <= self.top_level:
            raise ValueError(f"level {level} outside 2..{self.top_level}")
        return self.functions[level - 2]


def extend(r: PLF, d_i, d_next, tol: ToleranceConfig) -> PLF:
    """Build the level-(i+1) function from the level-i function."""
    if d_i <= 0 or d_next <= 0:
        raise ValueError("gaps must be positive")
    xi = 2 * d_i * d_next
    four_d2 = 4 * d_next * d_next
    bps, slopes, intercepts, values = r.breakpoints, r.slopes, r.intercepts, r.values
    w0 = r.inverse(intercepts[0] - intercepts[0])

    b = PLFBuilder(tol)
    if approx_ge(w0, 1, tol):
        # Case 1; ties at w0 = 1 land here, where both cases coincide.
        start = w0
        from_x = w0 - w0
    else:
        ws = r.solve_op3(xi)
        joint = 1 - ws
        # Lower branch: pieces of R_i over [ws, 1], reversed.  At an exact
        # breakpoint ws belongs to the right piece; the left limit at 1 is
        # taken from the piece below 1.
        i_lo = bisect_right(bps, ws)
        i_hi = bisect_left(bps, 1)
        for j in range(i_hi, i_lo - 1, -1):
            t_hi = 1 if j == i_hi else bps[j]
            t_lo = ws if j == i_lo else bps[j - 1]
            if t_hi <= t_lo:
                continue
            s = slopes[j]
            b.add(1 - t_hi, s + 2 * xi + four_d2, -(s + intercepts[j] + xi))
        start = ws
        from_x = joint
    # Upper branch (the Case 1 formula): pieces of R_i from ``start`` up.
    j0 = bisect_right(bps, start)
    for j in range(j0, len(slopes)):
        s = slopes[j]
        if j > j0:
            from_x = values[j - 1] / xi
        b.add(from_x, four_d2 - xi * xi / s, xi * intercepts[j] / s)

    out = b.build(r.level + 1, d_next)
    if out.piece_count > 2 * r.piece_count:
        raise RuntimeError(
            f"piece count {out.piece_count} exceeds twice the previous level"
        )
    return out


def build_chain(inst: Instance, tol: ToleranceConfig | None = None) -> ExplicitChain:
    """Construct R_2 .. R_{n-1} for an instance with n >= 3 points."""
    n = inst.n_points
    if n < 3:
        raise ValueError("chain needs at least 3 points")
    if tol is None:
        tol = inst.tolerance()
    d = inst.gaps
    fs = [make_r2(d[0], d[1])]
    max_pieces = fs[0].piece_count
    for i in range(2, n - 1):
        fs.append(extend(fs[-1], d[i - 1], d[i], tol))
        if fs[-1].piece_count > max_pieces:
            max_pieces = fs[-1].piece_count
    return ExplicitChain(functions=tuple(fs), max_pieces=max_pieces)
