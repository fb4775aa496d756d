"""Brute-force optimizers for desk-sized instances.

These exist to validate the chain solver, not to compete with it.  Both
oracles enumerate candidate active sets of the constraints, solve each
equality-constrained quadratic subproblem, and keep the KKT-valid feasible
candidate of least Q.  Strict convexity of the consecutive-edge program
makes its minimizer unique; the all-pairs program is only semidefinite, so
there the optimal value is the contract and the witness is one minimizer.

Float systems go through numpy; exact systems use fraction-exact Gaussian
elimination (the matrices are at most 19 x 19).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .instance import Instance, allpairs_q, constraint_slacks
from .numerics import as_scalar

MAX_CONSECUTIVE_POINTS = 10
MAX_ALLPAIRS_POINTS = 5
_FEAS_EPS = 1e-9


@dataclass(frozen=True)
class OracleResult:
    weights: tuple
    q_value: object
    active_set: frozenset


def _solve_exact(rows: list, rhs: list) -> list | None:
    """Gaussian elimination with pivot-by-magnitude over exact scalars.

    Returns None for a singular system.
    """
    n = len(rows)
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[piv][col] == 0:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / inv
            if f == 0:
                continue
            for c in range(col, n + 1):
                a[r][c] -= f * a[col][c]
    x = [None] * n
    for r in range(n - 1, -1, -1):
        acc = a[r][n]
        for c in range(r + 1, n):
            acc -= a[r][c] * x[c]
        x[r] = acc / a[r][r]
    return x


def _consecutive_constraint_rows(m: int) -> list:
    """0/1 gradients of the degree constraints, in certificate order."""
    rows = []
    e = [[1 if c == r else 0 for c in range(m)] for r in range(m)]
    rows.append(e[0])
    for j in range(1, m - 1):
        rows.append([a + b for a, b in zip(e[j], e[j + 1])])
    if m >= 2:
        rows.append(e[m - 1])
    return rows


def _hessian_half(inst: Instance) -> list:
    """G with Q(w) = w^T G w: diagonal 2*d_i^2, off-diagonal -d_i*d_{i+1}."""
    d = inst.gaps
    m = len(d)
    g = [[d[0] - d[0] for _ in range(m)] for _ in range(m)]
    for i in range(m):
        g[i][i] = 2 * d[i] * d[i]
        if i + 1 < m:
            g[i][i + 1] = g[i + 1][i] = -d[i] * d[i + 1]
    return g


def oracle_consecutive(inst: Instance) -> OracleResult:
    """Exhaustive active-set search over the consecutive-edge program."""
    n = inst.n_points
    if n > MAX_CONSECUTIVE_POINTS:
        raise ValueError("oracle scale exceeded: n must be at most 10")
    m = inst.n_weights
    if m == 1:
        w = (as_scalar(1, inst.exact),)
        return OracleResult(w, 2 * inst.gaps[0] ** 2 * w[0], frozenset({0}))
    rows = _consecutive_constraint_rows(m)
    g = _hessian_half(inst)
    if inst.exact:
        return _oracle_consecutive_exact(inst, rows, g)
    return _oracle_consecutive_float(inst, rows, g)


def _oracle_consecutive_float(inst: Instance, rows, g) -> OracleResult:
    m = inst.n_weights
    a_all = np.array(rows, dtype=float)
    h = 2 * np.array(g, dtype=float)
    nc = len(rows)
    best = None
    for size in range(nc + 1):
        for subset in combinations(range(nc), size):
            na = len(subset)
            kkt = np.zeros((m + na, m + na))
            kkt[:m, :m] = h
            if na:
                a_s = a_all[list(subset)]
                kkt[:m, m:] = -a_s.T
                kkt[m:, :m] = a_s
            rhs = np.zeros(m + na)
            rhs[m:] = 1.0
            try:
                sol = np.linalg.solve(kkt, rhs)
            except np.linalg.LinAlgError:
                continue
            w, lam = sol[:m], sol[m:]
            if w.min(initial=0.0) < -_FEAS_EPS:
                continue
            if (a_all @ w).min() < 1 - _FEAS_EPS:
                continue
            if lam.min(initial=0.0) < -_FEAS_EPS:
                continue
            q = float(w @ (h / 2) @ w)
            if best is None or q < best[0]:
                best = (q, tuple(float(x) for x in w), frozenset(subset))
    q, w, act = best
    return OracleResult(w, q, act)


def _oracle_consecutive_exact(inst: Instance, rows, g) -> OracleResult:
    from fractions import Fraction

    m = inst.n_weights
    nc = len(rows)
    best = None
    for size in range(nc + 1):
        for subset in combinations(range(nc), size):
            na = len(subset)
            dim = m + na
            sys_rows = []
            for r in range(m):
                row = [2 * g[r][c] for c in range(m)]
                row += [Fraction(-rows[k][r]) for k in subset]
                sys_rows.append(row)
            for k in subset:
                sys_rows.append([Fraction(v) for v in rows[k]] + [Fraction(0)] * na)
            rhs = [Fraction(0)] * m + [Fraction(1)] * na
            sol = _solve_exact(sys_rows, rhs)
            if sol is None:
                continue
            w, lam = sol[:m], sol[m:]
            if any(x < 0 for x in w):
                continue
            if any(s < 0 for s in constraint_slacks(inst, w)):
                continue
            if any(x < 0 for x in lam):
                continue
            q = sum(w[r] * g[r][c] * w[c] for r in range(m) for c in range(m))
            if best is None or q < best[0]:
                best = (q, tuple(w), frozenset(subset))
    q, w, act = best
    return OracleResult(w, q, act)


def oracle_allpairs(points) -> OracleResult:
    """Active-set search over the full pairwise-weight program.

    Variables are all pair weights w_ij (i < j); constraints are the n row
    sums >= 1 plus nonnegativity of every variable, and both families are
    enumerated as candidate active sets.  The quadratic form is PSD only,
    so singular stationarity systems fall back to a particular least-squares
    solution; inconsistent ones are skipped.  The optimal value is unique
    even where the minimizer is not.
    """
    n = len(points)
    if n > MAX_ALLPAIRS_POINTS:
        raise ValueError("oracle scale exceeded: n must be at most 5")
    if n < 2:
        raise ValueError("need at least 2 points")
    pts = [float(p) for p in points]
    pairs = list(combinations(range(n), 2))
    m = len(pairs)
    # Q = |J w|^2 with J[i, (a,b)] = (p_b - p_a) * ([i==a] - [i==b])
    jac = np.zeros((n, m))
    for col, (a, b) in enumerate(pairs):
        jac[a, col] = pts[b] - pts[a]
        jac[b, col] = pts[a] - pts[b]
    hess = 2 * jac.T @ jac
    rowmat = np.zeros((n, m))
    for col, (a, b) in enumerate(pairs):
        rowmat[a, col] = 1.0
        rowmat[b, col] = 1.0

    best = None
    for zmask in range(1 << m):
        free = [c for c in range(m) if not zmask >> c & 1]
        nf = len(free)
        h_ff = hess[np.ix_(free, free)]
        r_f = rowmat[:, free]
        for smask in range(1 << n):
            act = [r for r in range(n) if smask >> r & 1]
            na = len(act)
            kkt = np.zeros((nf + na, nf + na))
            kkt[:nf, :nf] = h_ff
            if na:
                kkt[:nf, nf:] = -r_f[act].T
                kkt[nf:, :nf] = r_f[act]
            rhs = np.zeros(nf + na)
            rhs[nf:] = 1.0
            try:
                sol = np.linalg.solve(kkt, rhs)
            except np.linalg.LinAlgError:
                sol, *_ = np.linalg.lstsq(kkt, rhs, rcond=None)
                if not np.allclose(kkt @ sol, rhs, atol=1e-8):
                    continue
            w = np.zeros(m)
            w[free] = sol[:nf]
            lam = np.zeros(n)
            lam[act] = sol[nf:]
            if w.min(initial=0.0) < -_FEAS_EPS:
                continue
            if (rowmat @ w).min() < 1 - _FEAS_EPS:
                continue
            if lam.min(initial=0.0) < -_FEAS_EPS:
                continue
            # zeroed variables need nonnegative reduced gradients
            mu = hess @ w - rowmat.T @ lam
            if any(mu[c] < -_FEAS_EPS for c in range(m) if zmask >> c & 1):
                continue
            q = float(w @ jac.T @ jac @ w)
            if best is None or q < best[0] - 1e-15:
                wmat = [[0.0] * n for _ in range(n)]
                for col, (a, b) in enumerate(pairs):
                    wmat[a][b] = wmat[b][a] = float(w[col])
                best = (q, tuple(tuple(r) for r in wmat), frozenset(act))
    q, wmat, act = best
    return OracleResult(wmat, q, act)


def allpairs_q_float(points, wmat) -> float:
    """Direct evaluation of the all-pairs quality measure (float)."""
    return float(allpairs_q([float(p) for p in points], wmat))
