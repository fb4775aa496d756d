"""Problem data and the quality measure.

An :class:`Instance` reduces a sorted point set on the line to consecutive
gaps ``d[i] = p[i+1] - p[i]`` and couplings ``xi[i] = 2 * d[i] * d[i+1]``.
The quality measure of a weight vector ``w`` over consecutive edges is

    Q(w) = (w1*d1)^2 + sum_i (w_i*d_i - w_{i-1}*d_{i-1})^2 + (wm*dm)^2,

minimised subject to ``w1 >= 1``, ``w_j + w_{j+1} >= 1`` for the interior
pairs, and ``wm >= 1``.  (The pair constraint at j = 1 is omitted: it is
implied by ``w1 >= 1``.)

This module also provides the KKT optimality certificate for that program
and the weight-redistribution step that moves mass from a skip edge (i, k)
onto the edges (i, j) and (j, k) without changing Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .numerics import (
    ToleranceConfig,
    approx_ge,
    as_scalar,
    default_tolerance,
    is_exact_scalar,
)


@dataclass(frozen=True)
class Instance:
    """Gaps and couplings of a sorted point set."""

    gaps: tuple
    couplings: tuple
    exact: bool

    @property
    def n_points(self) -> int:
        return len(self.gaps) + 1

    @property
    def n_weights(self) -> int:
        return len(self.gaps)

    def tolerance(self) -> ToleranceConfig:
        return default_tolerance(self.exact)


@dataclass(frozen=True)
class KKTCertificate:
    """Lagrange multipliers and residuals for a candidate weight vector.

    ``multipliers`` follows the constraint order: ``w1 >= 1``, the pair
    constraints ``w_j + w_{j+1} >= 1`` for j = 2 .. m-1, then ``wm >= 1``.
    A certificate is valid iff the stationarity residual and complementarity
    violation vanish (within tolerance) and no multiplier is negative.
    """

    multipliers: tuple
    stationarity_residual: object
    max_complementarity_violation: object
    min_multiplier: object
    valid: bool


def sort_points(coords: Sequence, exact: bool | None = None) -> tuple:
    """Coerce and sort raw coordinates into an ascending point tuple."""
    if exact is None:
        exact = all(is_exact_scalar(c) for c in coords)
    pts = sorted(as_scalar(c, exact) for c in coords)
    return tuple(pts)


def build_instance(points: Sequence, exact: bool | None = None) -> Instance:
    """Reduce points to gaps and couplings.

    Unsorted input is sorted first; duplicate coordinates are rejected
    because a zero gap degenerates the recursion.
    """
    if len(points) < 2:
        raise ValueError("need at least 2 points")
    if exact is None:
        exact = all(is_exact_scalar(c) for c in points)
    pts = sort_points(points, exact)
    gaps = tuple(pts[i + 1] - pts[i] for i in range(len(pts) - 1))
    for i, d in enumerate(gaps):
        if d == 0:
            raise ValueError(f"degenerate gap: duplicate coordinate at position {i}")
    couplings = tuple(2 * gaps[i] * gaps[i + 1] for i in range(len(gaps) - 1))
    return Instance(gaps=gaps, couplings=couplings, exact=exact)


def instance_from_gaps(gaps: Sequence, exact: bool | None = None) -> Instance:
    """Build an instance directly from positive gap lengths."""
    if len(gaps) < 1:
        raise ValueError("need at least 1 gap")
    if exact is None:
        exact = all(is_exact_scalar(g) for g in gaps)
    gs = tuple(as_scalar(g, exact) for g in gaps)
    if any(g <= 0 for g in gs):
        raise ValueError("gaps must be positive")
    couplings = tuple(2 * gs[i] * gs[i + 1] for i in range(len(gs) - 1))
    return Instance(gaps=gs, couplings=couplings, exact=exact)


def _check_length(inst: Instance, w: Sequence) -> None:
    if len(w) != inst.n_weights:
        raise ValueError(
            f"weight vector has length {len(w)}, expected {inst.n_weights}"
        )


def compute_q(inst: Instance, w: Sequence):
    """Quality measure Q(w); nonnegative, zero only at w = 0."""
    _check_length(inst, w)
    d = inst.gaps
    t = [wi * di for wi, di in zip(w, d)]
    q = t[0] * t[0] + t[-1] * t[-1]
    for i in range(1, len(t)):
        s = t[i] - t[i - 1]
        q += s * s
    return q


def constraint_slacks(inst: Instance, w: Sequence) -> list:
    """Slacks (value - 1) of the degree constraints, in certificate order.

    For n = 2 the two unary constraints coincide and only one is kept.
    """
    m = inst.n_weights
    if m == 1:
        return [w[0] - 1]
    slacks = [w[0] - 1]
    for j in range(1, m - 1):
        slacks.append(w[j] + w[j + 1] - 1)
    slacks.append(w[m - 1] - 1)
    return slacks


def is_feasible(inst: Instance, w: Sequence, tol: ToleranceConfig | None = None) -> bool:
    _check_length(inst, w)
    if tol is None:
        tol = inst.tolerance()
    return all(approx_ge(s, 0, tol) for s in constraint_slacks(inst, w))


def quality_gradient(inst: Instance, w: Sequence) -> list:
    """Analytic gradient of Q at w."""
    _check_length(inst, w)
    d = inst.gaps
    m = len(d)
    t = [wi * di for wi, di in zip(w, d)]
    # s[i] = t[i] - t[i-1] with the boundary terms s[0] = t[0], s[m] = t[m-1]
    grad = []
    for i in range(m):
        s_i = t[i] - t[i - 1] if i > 0 else t[0]
        if i < m - 1:
            s_next = t[i + 1] - t[i]
            grad.append(2 * d[i] * (s_i - s_next))
        else:
            grad.append(2 * d[i] * (s_i + t[m - 1]))
    return grad


def check_kkt(
    inst: Instance, w: Sequence, tol: ToleranceConfig | None = None
) -> KKTCertificate:
    """Certify optimality of a feasible ``w`` for the constrained program.

    The constraint gradients have pairwise-distinct leading weight indices,
    so the multipliers on the active set are unique and are recovered by a
    single forward sweep; equations left over accumulate the stationarity
    residual.  Q is strictly convex, hence a valid certificate identifies
    the unique optimum.
    """
    _check_length(inst, w)
    if tol is None:
        tol = inst.tolerance()
    if not is_feasible(inst, w, tol):
        raise ValueError("weight vector is infeasible")

    m = inst.n_weights
    grad = quality_gradient(inst, w)
    slacks = constraint_slacks(inst, w)
    active_eps = max(tol.abs_eps, tol.rel_eps)
    active = [s <= active_eps for s in slacks]

    zero = grad[0] - grad[0]
    if m == 1:
        lam = grad[0] if active[0] else zero
        residuals = [grad[0] - lam]
        multipliers = [lam]
    else:
        # constraint k=0: w1; k=1..m-2: pair (w_j, w_{j+1}) for j=k+1;
        # k=m-1: wm.  Pair k touches weight equations k and k+1 (0-based).
        multipliers = [zero] * m
        residuals = []
        if active[0]:
            multipliers[0] = grad[0]
        residuals.append(grad[0] - multipliers[0])
        for i in range(1, m):  # weight equation i (0-based)
            known = multipliers[i - 1] if i >= 2 else zero
            k = i if i <= m - 2 else m - 1  # constraint with leading weight i
            if active[k]:
                multipliers[k] = grad[i] - known
            residuals.append(grad[i] - known - multipliers[k])

    stat = max(abs(r) for r in residuals)
    compl = max(abs(lam * s) for lam, s in zip(multipliers, slacks))
    min_mult = min(multipliers)

    gscale = 1 + max(abs(g) for g in grad)
    thresh = max(tol.abs_eps, tol.rel_eps * gscale)
    valid = stat <= thresh and compl <= thresh and min_mult >= -thresh
    return KKTCertificate(
        multipliers=tuple(multipliers),
        stationarity_residual=stat,
        max_complementarity_violation=compl,
        min_multiplier=min_mult,
        valid=valid,
    )


def allpairs_q(points: Sequence, weights: Sequence[Sequence]):
    """Quality measure of a full symmetric weight matrix over ``points``."""
    n = len(points)
    q = None
    for i in range(n):
        v = None
        for j in range(n):
            if j == i:
                continue
            term = weights[i][j] * (points[j] - points[i])
            v = term if v is None else v + term
        q = v * v if q is None else q + v * v
    return q


def redistribute_weight(
    points: Sequence, weights: Sequence[Sequence], i: int, j: int, k: int
) -> list:
    """Move the weight on the skip edge (i, k) onto (i, j) and (j, k).

    With a = p_j - p_i, b = p_k - p_j and v = w_ik, the edge (i, j) gains
    ((a+b)/a) * v and (j, k) gains ((a+b)/b) * v, which leaves every point's
    imbalance vector, and hence Q, unchanged, while row sums only grow.
    Returns a new matrix; the input is not modified.
    """
    if not (0 <= i < j < k < len(points)):
        raise ValueError("need indices i < j < k inside the point set")
    v = weights[i][k]
    if v == 0:
        raise ValueError("no weight on the skip edge (i, k)")
    a = points[j] - points[i]
    b = points[k] - points[j]
    out = [list(row) for row in weights]
    out[i][k] = out[k][i] = v - v  # zero of the right scalar type
    out[i][j] = out[j][i] = out[i][j] + (a + b) / a * v
    out[j][k] = out[k][j] = out[j][k] + (a + b) / b * v
    return out
