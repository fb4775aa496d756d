"""Implicit matrix-chain representation of the derivative functions.

Instead of storing pieces, each level keeps two 3x3 homogeneous affine maps
that send graph points of R_i to graph points of R_{i+1}: ``M`` for the
upper branch and, when the pair constraint can bind (Case 2), ``L`` for the
reflected lower branch together with the branch point on the new graph.
Only the first function R_2 is explicit, so a query on R_i walks the chain
down to level 2 and the whole construction costs O(n^2).

A query is answered in two passes:

* down: the query is carried as a projective line covector ``(c0, c1, c2)``
  (points p with c . p = 0 satisfy the query) and pulled back level by
  level; the sign of ``c . breakpoint`` decides the branch, flipping the
  orientation parity whenever an L step reverses the graph direction;
* up: the intersection of the pulled-back line with the explicit base
  function is pushed forward through the recorded branch maps, which keeps
  every intermediate value on the moderate scale of its own level.

Walk arithmetic is decoupled from the instance arithmetic.  The exact core
rescales the gaps to integers (optimal weights are invariant under scaling
all gaps) and walks with integer covectors, which makes branch decisions
and answers exact.  The float core walks in machine floats with covector
renormalisation; it is fast at any n but the matrix chain amplifies
rounding errors exponentially on unfavourable instances (measured: answers
can lose all precision beyond a few hundred levels), so by default float
instances only use it where the exact core would be expensive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .instance import Instance
from .numerics import ToleranceConfig, approx_ge, default_tolerance
from .plf import make_r2

#: Auto core choice: float instances up to this n with small integer gaps
#: get exact walk arithmetic; beyond it the float walk keeps queries cheap.
EXACT_CORE_MAX_N = 640
_EXACT_CORE_MAX_GAP = 2**20


def m_matrix(d_i, d_next) -> tuple:
    """Upper-branch map between consecutive graphs, rows of a 3x3 matrix."""
    if d_i <= 0 or d_next <= 0:
        raise ValueError("gaps must be positive")
    xi = 2 * d_i * d_next
    return (
        (0 * xi, 1 / xi, 0 * xi),
        (-xi, 4 * d_next * d_next / xi, 0 * xi),
        (0 * xi, 0 * xi, xi / xi),
    )


def l_matrix(d_i, d_next) -> tuple:
    """Lower-branch (reflected) map between consecutive graphs."""
    if d_i <= 0 or d_next <= 0:
        raise ValueError("gaps must be positive")
    xi = 2 * d_i * d_next
    one = xi / xi
    four_d2 = 4 * d_next * d_next
    return (
        (-one, 0 * xi, one),
        (-2 * xi - four_d2, -one, xi + four_d2),
        (0 * xi, 0 * xi, one),
    )


def apply_affine(matrix, point) -> tuple:
    """Apply a 3x3 row-major matrix to a homogeneous column point."""
    x, y, w = point
    return tuple(row[0] * x + row[1] * y + row[2] * w for row in matrix)


@dataclass(frozen=True)
class LevelRecord:
    """Per-level implicit data in the instance's own arithmetic.

    ``breakpoint`` and ``l_matrix`` are present exactly for Case 2 levels;
    ``value_at_zero`` is R_level(0), kept for inverse range checks.
    """

    level: int
    d_prev: object
    d_next: object
    breakpoint: tuple | None
    value_at_zero: object

    @property
    def m_matrix(self) -> tuple:
        return m_matrix(self.d_prev, self.d_next)

    @property
    def l_matrix(self) -> tuple | None:
        if self.breakpoint is None:
            return None
        return l_matrix(self.d_prev, self.d_next)


class ImplicitChain:
    """See module docstring.  Build with :func:`build_implicit`."""

    def __init__(self, inst: Instance, core: str, tol: ToleranceConfig):
        n = inst.n_points
        if n < 3:
            raise ValueError("chain needs at least 3 points")
        if inst.exact and core == "float":
            raise ValueError("exact instances require the exact core")
        self.top_level = n - 1
        self.public_exact = inst.exact
        self.core = core
        self.tol = tol
        self.ops = 0
        self._exact_core = core == "exact"

        if self._exact_core:
            fracs = [Fraction(g) for g in inst.gaps]
            lam = 1
            for g in fracs:
                lam = lam * g.denominator // math.gcd(lam, g.denominator)
            self.lam2 = lam * lam
            gaps = [int(g * lam) for g in fracs]
            self.base = make_r2(Fraction(gaps[0]), Fraction(gaps[1]))
            xb, yb = self.base.breakpoints[0], self.base.values[0]
            den = xb.denominator * yb.denominator // math.gcd(
                xb.denominator, yb.denominator
            )
            self._base_bp = (
                xb.numerator * (den // xb.denominator),
                yb.numerator * (den // yb.denominator),
                den,
            )
        else:
            self.lam2 = 1.0
            gaps = [float(g) for g in inst.gaps]
            self.base = make_r2(gaps[0], gaps[1])
            self._base_bp = (self.base.breakpoints[0], self.base.values[0], 1.0)

        # walk constants per record, indexed by level - 3
        self._xi: list = []
        self._xi2: list = []
        self._fourd2: list = []
        self._txi4: list = []
        self._xi4: list = []
        self._bp: list = []
        self._r0: list = []
        records = []
        zero = gaps[0] - gaps[0]
        one = gaps[0] // gaps[0] if self._exact_core else 1.0
        for i in range(2, n - 1):
            d_i, d_nx = gaps[i - 1], gaps[i]
            xi = 2 * d_i * d_nx
            four_d2 = 4 * d_nx * d_nx
            w0 = self._inverse_scaled(i, Fraction(0) if self._exact_core else 0.0)
            case1 = w0 >= 1 if self._exact_core else approx_ge(w0, 1, tol)
            if case1:
                bp_triple = None
                bp_public = None
                r0 = -xi * w0
            else:
                ws = self._op3_scaled(i, Fraction(xi) if self._exact_core else xi)
                xh = 1 - ws
                yh = four_d2 * xh - xi * self._inverse_scaled(i, xi * xh)
                if self._exact_core:
                    xh, yh = Fraction(xh), Fraction(yh)
                    den = xh.denominator * yh.denominator // math.gcd(
                        xh.denominator, yh.denominator
                    )
                    bp_triple = (
                        xh.numerator * (den // xh.denominator),
                        yh.numerator * (den // yh.denominator),
                        den,
                    )
                else:
                    bp_triple = (xh, yh, 1.0)
                bp_public = (self._to_public(xh, scale=False), self._to_public(yh))
                r1 = self._eval_scaled(i, one)
                r0 = -r1 - xi
            self._xi.append(xi)
            self._xi2.append(xi * xi)
            self._fourd2.append(four_d2)
            self._txi4.append(2 * xi + four_d2)
            self._xi4.append(xi + four_d2)
            self._bp.append(bp_triple)
            self._r0.append(r0)
            records.append(
                LevelRecord(
                    level=i + 1,
                    d_prev=inst.gaps[i - 1],
                    d_next=inst.gaps[i],
                    breakpoint=bp_public,
                    value_at_zero=self._to_public(r0),
                )
            )
        self.levels = tuple(records)

    # -- unit conversions ------------------------------------------------

    def _to_public(self, v, scale: bool = True):
        """Scaled core value -> instance arithmetic (y-units carry lam^2)."""
        if scale:
            v = v / self.lam2
        return v if self.public_exact else float(v)

    def _y_to_core(self, y):
        return Fraction(y) * self.lam2 if self._exact_core else float(y)

    # -- the two-pass walk -------------------------------------------------

    def _walk(self, level: int, c0, c1, c2, want: str):
        renorm = not self._exact_core
        xi_a, xi2_a = self._xi, self._xi2
        fourd2_a, txi4_a, xi4_a, bp_a = self._fourd2, self._txi4, self._xi4, self._bp
        flip = False
        choices = []
        for ridx in range(level - 3, -1, -1):
            bp = bp_a[ridx]
            use_m = True
            if bp is not None:
                sg = c0 * bp[0] + c1 * bp[1] + c2 * bp[2]
                if sg != 0:
                    use_m = (sg < 0) != flip
            choices.append(use_m)
            if use_m:
                c0, c1, c2 = -xi2_a[ridx] * c1, c0 + fourd2_a[ridx] * c1, xi_a[ridx] * c2
            else:
                c0, c1, c2 = (
                    -c0 - txi4_a[ridx] * c1,
                    -c1,
                    c0 + xi4_a[ridx] * c1 + c2,
                )
                flip = not flip
            if renorm:
                m = max(abs(c0), abs(c1), abs(c2))
                if m == 0.0:
                    raise RuntimeError("query line collapsed during pullback")
                inv = 1.0 / m
                c0 *= inv
                c1 *= inv
                c2 *= inv
        self.ops += level - 2
        # base piece: same side test against the explicit breakpoint
        bx, by, bw = self._base_bp
        sg = c0 * bx + c1 * by + c2 * bw
        hi = True if sg == 0 else ((sg < 0) != flip)
        idx = 1 if hi else 0
        s = self.base.slopes[idx]
        t = self.base.intercepts[idx]
        x = -(c2 + c1 * t) / (c0 + c1 * s)
        y = s * x + t
        # push the answer point back up through the chosen branches
        for ridx, use_m in zip(range(level - 2), reversed(choices)):
            if use_m:
                xn = y / xi_a[ridx]
                y = fourd2_a[ridx] * xn - xi_a[ridx] * x
            else:
                xn = 1 - x
                y = -y + txi4_a[ridx] * xn - xi_a[ridx]
            x = xn
        return x if want == "x" else y

    # -- scaled-unit queries (core arithmetic) -----------------------------

    def _check_level(self, level: int) -> None:
        if not 2 <= level <= self.top_level:
            raise ValueError(f"level {level} outside 2..{self.top_level}")

    def _eval_scaled(self, level: int, x):
        if level == 2:
            return self.base.eval(x)
        if self._exact_core:
            x = Fraction(x)
            return self._walk(level, x.denominator, 0, -x.numerator, "y")
        return self._walk(level, 1.0, 0.0, -x, "y")

    def _inverse_scaled(self, level: int, y):
        if level == 2:
            return self.base.inverse(y)
        r0 = self._r0[level - 3]
        if y < r0:
            if self._exact_core:
                raise ValueError("below range: y < R_level(0)")
            # Float core: R(0) < 0 holds mathematically, so a nonnegative y
            # is always in range no matter what the walk computed for r0;
            # for negative y the stored r0 is the best available bound.
            slack = max(self.tol.abs_eps, self.tol.rel_eps * abs(r0))
            if y < 0 and r0 - y > slack:
                raise ValueError("below range: y < R_level(0)")
        if self._exact_core:
            y = Fraction(y)
            return self._walk(level, 0, y.denominator, -y.numerator, "x")
        return self._walk(level, 0.0, 1.0, -y, "x")

    def _op3_scaled(self, level: int, xi):
        if level == 2:
            return self.base.solve_op3(xi)
        if self._exact_core:
            xi = Fraction(xi)
            return self._walk(level, xi.numerator, xi.denominator, -xi.numerator, "x")
        return self._walk(level, xi, 1.0, -xi, "x")

    # -- public queries in the instance arithmetic -------------------------

    def query_eval(self, level: int, x):
        """Op 1: R_level(x)."""
        self._check_level(level)
        if x < 0:
            raise ValueError("x must be nonnegative")
        x_core = Fraction(x) if self._exact_core else float(x)
        return self._to_public(self._eval_scaled(level, x_core))

    def query_inverse(self, level: int, y):
        """Op 2: the unique x with R_level(x) = y."""
        self._check_level(level)
        x = self._inverse_scaled(level, self._y_to_core(y))
        return x if self.public_exact else float(x)

    def query_op3(self, level: int, xi):
        """Op 3: the unique x with x + R_level(x)/xi = 1."""
        self._check_level(level)
        if xi <= 0:
            raise ValueError("xi must be positive")
        x = self._op3_scaled(level, self._y_to_core(xi))
        return x if self.public_exact else float(x)

    def value_at_zero(self, level: int):
        self._check_level(level)
        if level == 2:
            return self._to_public(self.base.value_at_zero())
        return self.levels[level - 3].value_at_zero


def choose_core(inst: Instance) -> str:
    """Pick walk arithmetic: exact whenever it is exact-by-construction or
    cheap (small integer gaps, moderate n); float otherwise."""
    if inst.exact:
        return "exact"
    if inst.n_points <= EXACT_CORE_MAX_N and all(
        float(g).is_integer() and abs(g) <= _EXACT_CORE_MAX_GAP for g in inst.gaps
    ):
        return "exact"
    return "float"


def build_implicit(
    inst: Instance, core: str = "auto", tol: ToleranceConfig | None = None
) -> ImplicitChain:
    """Construct the implicit chain for an instance with n >= 3 points."""
    if core == "auto":
        core = choose_core(inst)
    elif core not in ("exact", "float"):
        raise ValueError(f"unknown core {core!r}")
    if tol is None:
        tol = default_tolerance(inst.exact)
    return ImplicitChain(inst, core, tol)
