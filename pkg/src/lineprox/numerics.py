"""Scalar backends and tolerance-aware comparisons.

Every algorithm in this package is written against plain Python arithmetic,
so it runs unchanged over two scalar backends:

* float backend: ordinary ``float`` values, compared with the tolerances in
  :data:`FLOAT_TOL`;
* exact backend: ``fractions.Fraction`` (and ``int``) values, compared
  exactly (:data:`EXACT_TOL` is all-zero).

Exact rationals are kept in lowest terms by ``Fraction`` itself, which keeps
integer sizes bounded along the recursion chains.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

#: Types accepted as exact scalars.  Anything else is treated as float data.
EXACT_TYPES = (int, Fraction)


@dataclass(frozen=True)
class ToleranceConfig:
    """Relative/absolute comparison tolerances.

    Both are zero in the exact backend, which turns every tolerance-aware
    comparison into exact equality.
    """

    rel_eps: float | Fraction = 0
    abs_eps: float | Fraction = 0

    def __post_init__(self) -> None:
        if self.rel_eps < 0 or self.abs_eps < 0:
            raise ValueError("tolerances must be nonnegative")


#: Exact backend: comparisons are exact.
EXACT_TOL = ToleranceConfig(0, 0)

#: Float backend defaults.  The chain recursions are short sequences of
#: affine maps, so error growth is mild; these pass the full test suite
#: with margin.
FLOAT_TOL = ToleranceConfig(rel_eps=1e-12, abs_eps=1e-15)


def approx_eq(a, b, tol: ToleranceConfig) -> bool:
    """True iff |a - b| <= max(abs_eps, rel_eps * max(|a|, |b|))."""
    d = a - b
    if d < 0:
        d = -d
    bound = tol.rel_eps * max(abs(a), abs(b))
    if tol.abs_eps > bound:
        bound = tol.abs_eps
    return d <= bound


def approx_ge(a, b, tol: ToleranceConfig) -> bool:
    """True iff a >= b up to the configured tolerance."""
    return a >= b or approx_eq(a, b, tol)


def scalar_from_ratio(num: int, den: int, exact: bool = False):
    """num/den in the requested backend; exact values are in lowest terms."""
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if exact:
        return Fraction(num, den)
    return num / den


def is_exact_scalar(x) -> bool:
    return isinstance(x, EXACT_TYPES)


def as_scalar(x, exact: bool):
    """Coerce ``x`` into the requested backend.

    Floats convert to ``Fraction`` losslessly (every float is a dyadic
    rational), so round-tripping float data through the exact backend is
    safe.
    """
    if exact:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        return Fraction(x)
    return float(x)


def default_tolerance(exact: bool) -> ToleranceConfig:
    return EXACT_TOL if exact else FLOAT_TOL
