"""Strictly increasing continuous piecewise-linear functions on [0, inf).

This is the explicit representation of the derivative functions that drive
the weight recursion.  A function is stored as parallel tuples of interior
breakpoints and per-piece (slope, intercept) coefficients, one piece more
than breakpoints; the first piece starts at 0.  A stored breakpoint belongs
to the piece on its right, which makes the slope lookup agree with the
right-derivative convention.

Supported queries:

* ``eval(x)``        -- function value,
* ``inverse(y)``     -- unique preimage of y (strict monotonicity),
* ``solve_op3(xi)``  -- the unique root of x + f(x)/xi = 1,
* ``right_slope(x)`` -- slope of the piece to the right of x.

Values at the stored breakpoints are cached so that ``inverse`` and
``solve_op3`` reduce to one binary search plus one division.
"""

from __future__ import annotations

from bisect import bisect_right
from typing import NamedTuple

from .numerics import ToleranceConfig, approx_eq


class LinearPiece(NamedTuple):
    slope: object
    intercept: object


class PLF:
    """Immutable piecewise-linear function; see module docstring."""

    __slots__ = ("breakpoints", "slopes", "intercepts", "values", "level", "own_gap")

    def __init__(self, breakpoints, slopes, intercepts, level=0, own_gap=None):
        if len(slopes) != len(breakpoints) + 1 or len(intercepts) != len(slopes):
            raise ValueError("need exactly one more piece than breakpoints")
        if any(s <= 0 for s in slopes):
            raise ValueError("slopes must be positive")
        bps = tuple(breakpoints)
        for i in range(1, len(bps)):
            if bps[i] <= bps[i - 1]:
                raise ValueError("breakpoints must be strictly ascending")
        self.breakpoints = bps
        self.slopes = tuple(slopes)
        self.intercepts = tuple(intercepts)
        # cached f(breakpoint), via the right piece (continuity makes the
        # left piece give the same value)
        self.values = tuple(
            self.slopes[i + 1] * b + self.intercepts[i + 1] for i, b in enumerate(bps)
        )
        self.level = level
        self.own_gap = own_gap

    @property
    def pieces(self) -> tuple:
        return tuple(LinearPiece(s, c) for s, c in zip(self.slopes, self.intercepts))

    @property
    def piece_count(self) -> int:
        return len(self.slopes)

    def value_at_zero(self):
        return self.intercepts[0]

    def eval(self, x):
        if x < 0:
            raise ValueError("x must be nonnegative")
        i = bisect_right(self.breakpoints, x)
        return self.slopes[i] * x + self.intercepts[i]

    def inverse(self, y):
        if y < self.intercepts[0]:
            raise ValueError("below range: y < f(0)")
        i = bisect_right(self.values, y)
        return (y - self.intercepts[i]) / self.slopes[i]

    def solve_op3(self, xi):
        """Root of x + f(x)/xi = 1, i.e. of g(x) = xi*x + f(x) = xi.

        g inherits the breakpoints of f and is strictly increasing, and
        g(0) = f(0) < 0 < xi guarantees a unique root in (0, inf).
        """
        if xi <= 0:
            raise ValueError("xi must be positive")
        if self.intercepts[0] >= xi:
            raise ValueError("no root: g(0) >= xi requires f(0) < xi")
        bps, vals = self.breakpoints, self.values
        lo, hi = 0, len(bps)
        while lo < hi:
            mid = (lo + hi) // 2
            if xi * bps[mid] + vals[mid] < xi:
                lo = mid + 1
            else:
                hi = mid
        return (xi - self.intercepts[lo]) / (xi + self.slopes[lo])

    def right_slope(self, x):
        if x < 0:
            raise ValueError("x must be nonnegative")
        return self.slopes[bisect_right(self.breakpoints, x)]

    def append(self, piece: LinearPiece, from_x, tol: ToleranceConfig) -> "PLF":
        """Extend with one more piece starting at ``from_x``.

        The new piece must continue the function value at ``from_x``; a
        piece collinear with the last one is merged instead of adding a
        breakpoint.
        """
        b = PLFBuilder(tol)
        starts = (0,) + self.breakpoints
        for x0, s, c in zip(starts, self.slopes, self.intercepts):
            b.add(x0, s, c)
        b.add(from_x, piece.slope, piece.intercept)
        return b.build(self.level, self.own_gap)

    def dump(self) -> str:
        """One line per piece: ``from_x slope intercept``."""
        starts = (0,) + self.breakpoints
        return "\n".join(
            f"{x0} {s} {c}"
            for x0, s, c in zip(starts, self.slopes, self.intercepts)
        )

    def __repr__(self) -> str:
        return f"PLF(level={self.level}, pieces={self.piece_count})"


class PLFBuilder:
    """Accumulates pieces left to right, merging collinear neighbours."""

    def __init__(self, tol: ToleranceConfig):
        self.tol = tol
        self._starts: list = []
        self._slopes: list = []
        self._intercepts: list = []

    def add(self, from_x, slope, intercept) -> None:
        if slope <= 0:
            raise ValueError("slopes must be positive")
        # clipping can produce zero-width slivers whose successor starts at
        # (or, after rounding, just before) the same x; replace them
        while self._slopes and from_x <= self._starts[-1]:
            last = self._starts[-1]
            bound = max(self.tol.abs_eps,
                        self.tol.rel_eps * max(abs(last), abs(from_x)))
            if last - from_x > bound:
                raise ValueError("pieces must start at increasing x")
            self._starts.pop()
            self._slopes.pop()
            self._intercepts.pop()
            if not self._slopes:
                from_x = last - last  # snap back to the origin
        if not self._slopes:
            if from_x != 0:
                raise ValueError("first piece must start at 0")
            self._starts.append(from_x)
            self._slopes.append(slope)
            self._intercepts.append(intercept)
            return
        prev = self._slopes[-1] * from_x + self._intercepts[-1]
        new = slope * from_x + intercept
        # the evaluations cancel large terms, so the continuity tolerance
        # scales with the operands rather than the (small) values
        scale = max(
            abs(self._slopes[-1]) * from_x,
            abs(self._intercepts[-1]),
            abs(prev),
            abs(new),
        )
        bound = max(self.tol.abs_eps, self.tol.rel_eps * scale)
        if abs(prev - new) > bound:
            raise ValueError(
                f"discontinuity at {from_x}: {prev} != {new}"
            )
        if approx_eq(slope, self._slopes[-1], self.tol) and approx_eq(
            intercept, self._intercepts[-1], self.tol
        ):
            return  # collinear: merge, no breakpoint stored
        self._starts.append(from_x)
        self._slopes.append(slope)
        self._intercepts.append(intercept)

    def build(self, level: int, own_gap) -> PLF:
        if not self._slopes:
            raise ValueError("no pieces added")
        return PLF(
            self._starts[1:], self._slopes, self._intercepts, level, own_gap
        )


def make_r2(d1, d2) -> PLF:
    """Base derivative function for the first two gaps.

    Two pieces: ``4*d2^2*x - 2*d1*d2`` below the breakpoint ``2*d1/d2`` and
    ``3*d2^2*x`` above it; the value at 0 is the negated first coupling.
    """
    if d1 <= 0 or d2 <= 0:
        raise ValueError("gaps must be positive")
    xi1 = 2 * d1 * d2
    bp = (2 * d1) / d2
    return PLF(
        breakpoints=(bp,),
        slopes=(4 * d2 * d2, 3 * d2 * d2),
        intercepts=(-xi1, xi1 - xi1),
        level=2,
        own_gap=d2,
    )
