"""Optimal edge weights for proximity graphs over points on a line.

Given n sorted points, the library computes the nonnegative weights on
consecutive edges that minimise the squared-imbalance quality measure
subject to unit degree constraints, in well under O(n^2) time in practice.
Two chain representations (explicit piecewise-linear and implicit
matrix-chain) and two arithmetic backends (float and exact rational) are
provided, together with a brute-force oracle and KKT certificates for
verification.
"""

from .explicit_chain import ExplicitChain, build_chain, extend
from .implicit_chain import (
    ImplicitChain,
    LevelRecord,
    apply_affine,
    build_implicit,
    l_matrix,
    m_matrix,
)
from .instance import (
    Instance,
    KKTCertificate,
    allpairs_q,
    build_instance,
    check_kkt,
    compute_q,
    constraint_slacks,
    instance_from_gaps,
    is_feasible,
    redistribute_weight,
    sort_points,
)
from .numerics import (
    EXACT_TOL,
    FLOAT_TOL,
    ToleranceConfig,
    approx_eq,
    as_scalar,
    scalar_from_ratio,
)
from .oracle import OracleResult, oracle_allpairs, oracle_consecutive
from .plf import PLF, LinearPiece, PLFBuilder, make_r2
from .solver import SolveResult, back_substitute, gradient_q, solve

__version__ = "0.1.0"

__all__ = [
    "EXACT_TOL",
    "FLOAT_TOL",
    "ExplicitChain",
    "ImplicitChain",
    "Instance",
    "KKTCertificate",
    "LevelRecord",
    "LinearPiece",
    "OracleResult",
    "PLF",
    "PLFBuilder",
    "SolveResult",
    "ToleranceConfig",
    "allpairs_q",
    "apply_affine",
    "approx_eq",
    "as_scalar",
    "back_substitute",
    "build_chain",
    "build_implicit",
    "build_instance",
    "check_kkt",
    "compute_q",
    "constraint_slacks",
    "extend",
    "gradient_q",
    "instance_from_gaps",
    "is_feasible",
    "l_matrix",
    "m_matrix",
    "make_r2",
    "oracle_allpairs",
    "oracle_consecutive",
    "redistribute_weight",
    "scalar_from_ratio",
    "solve",
    "sort_points",
]
