from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lineprox.numerics import (
    EXACT_TOL,
    FLOAT_TOL,
    ToleranceConfig,
    approx_eq,
    approx_ge,
    as_scalar,
    default_tolerance,
    is_exact_scalar,
    scalar_from_ratio,
)

rationals = st.fractions(
    min_value=Fraction(-1000), max_value=Fraction(1000), max_denominator=97
)


def test_approx_eq_exact_identity():
    assert approx_eq(1.0, 1.0, EXACT_TOL)


def test_approx_eq_within_tolerance():
    assert approx_eq(1.0, 1.0 + 1e-14, ToleranceConfig(rel_eps=1e-12))


def test_exact_rationals_differ():
    assert not approx_eq(Fraction(1, 3), Fraction(3333, 10000), EXACT_TOL)


def test_approx_eq_absolute_floor():
    assert approx_eq(0.0, 1e-16, FLOAT_TOL)
    assert not approx_eq(0.0, 1e-9, FLOAT_TOL)


def test_approx_ge():
    assert approx_ge(1.0, 1.0 + 1e-16, FLOAT_TOL)
    assert not approx_ge(1.0, 1.1, FLOAT_TOL)
    assert approx_ge(2, 1, EXACT_TOL)


def test_scalar_from_ratio():
    assert scalar_from_ratio(1, 2) == 0.5
    assert scalar_from_ratio(2, 4, exact=True) == scalar_from_ratio(1, 2, exact=True)
    assert scalar_from_ratio(-3, 1, exact=True) == -3
    assert isinstance(scalar_from_ratio(1, 3, exact=True), Fraction)


def test_scalar_from_ratio_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        scalar_from_ratio(1, 0)


def test_negative_tolerances_rejected():
    with pytest.raises(ValueError):
        ToleranceConfig(rel_eps=-1e-3)


def test_as_scalar_roundtrips_floats_exactly():
    x = 0.1
    assert float(as_scalar(x, exact=True)) == x
    assert isinstance(as_scalar(Fraction(1, 3), exact=False), float)


def test_is_exact_scalar():
    assert is_exact_scalar(Fraction(1, 2)) and is_exact_scalar(3)
    assert not is_exact_scalar(0.5)


def test_default_tolerance():
    assert default_tolerance(True) is EXACT_TOL
    assert default_tolerance(False) is FLOAT_TOL


@given(a=rationals, b=st.fractions(max_denominator=97).filter(lambda x: x != 0))
def test_ratio_roundtrip_identity(a, b):
    assert (a / b) * b == a


@given(a=rationals, b=rationals, c=rationals)
def test_order_compatible_with_addition(a, b, c):
    if a < b:
        assert a + c < b + c


@given(a=rationals, b=rationals, c=rationals.filter(lambda x: x > 0))
def test_order_compatible_with_positive_scaling(a, b, c):
    if a < b:
        assert a * c < b * c
