"""End-to-end solver: instance -> chain -> optimal weights.

Back-substitution needs one inverse query per level:

    w[m]  = max(R_{n-1}^{-1}(0), 1)
    w[i]  = max(R_i^{-1}(xi_i * w[i+1]), 1 - w[i+1])   for i = n-2 .. 2
    w[1]  = max(d2/(2*d1) * w[2], 1)

For two points the program collapses to minimising ``2*d1^2*w1^2`` under
``w1 >= 1``, so ``w = (1,)`` without building any chain.
"""

from __future__ import annotations

from dataclasses import dataclass

from .explicit_chain import build_chain
from .implicit_chain import build_implicit
from .instance import (
    Instance,
    KKTCertificate,
    check_kkt,
    compute_q,
    quality_gradient,
)
from .numerics import ToleranceConfig, as_scalar

BACKENDS = ("explicit", "implicit")


@dataclass(frozen=True)
class SolveResult:
    weights: tuple
    q_value: object
    certificate: KKTCertificate | None
    backend: str
    max_pieces: int | None = None
    op_count: int | None = None


def gradient_q(inst: Instance, w) -> list:
    """Analytic gradient of the quality measure at ``w``."""
    return quality_gradient(inst, w)


def back_substitute(inst: Instance, inverse_fn) -> list:
    """Recover the optimal weights given ``inverse_fn(level, y)``."""
    m = inst.n_weights
    one = as_scalar(1, inst.exact)
    zero = one - one
    w = [zero] * m
    wn = inverse_fn(m, zero)
    w[m - 1] = wn if wn > one else one
    for i in range(m - 1, 1, -1):  # levels n-2 .. 2, weight index i-1 (0-based)
        xi_i = inst.couplings[i - 1]
        a = inverse_fn(i, xi_i * w[i])
        b = one - w[i]
        w[i - 1] = a if a > b else b
    first = inst.gaps[1] / (2 * inst.gaps[0]) * w[1]
    w[0] = first if first > one else one
    return w


def solve(
    inst: Instance,
    backend: str = "explicit",
    tol: ToleranceConfig | None = None,
    certify: bool = True,
    implicit_core: str = "auto",
) -> SolveResult:
    """Compute the optimal weights of an instance.

    The explicit backend is the default: it is near-linear on random data.
    The implicit backend guarantees O(n^2) operations regardless of piece
    growth; see :mod:`lineprox.implicit_chain` for its arithmetic modes.
    """
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}")
    if tol is None:
        tol = inst.tolerance()
    m = inst.n_weights
    max_pieces = None
    op_count = None
    if m == 1:
        w = [as_scalar(1, inst.exact)]
    elif backend == "explicit":
        chain = build_chain(inst, tol)
        max_pieces = chain.max_pieces
        w = back_substitute(inst, lambda lvl, y: chain.function(lvl).inverse(y))
    else:
        chain = build_implicit(inst, core=implicit_core, tol=tol)
        w = back_substitute(inst, chain.query_inverse)
        op_count = chain.ops
    cert = None
    q = compute_q(inst, w)
    if certify:
        cert = check_kkt(inst, w, tol)
    return SolveResult(
        weights=tuple(w),
        q_value=q,
        certificate=cert,
        backend=backend,
        max_pieces=max_pieces,
        op_count=op_count,
    )
