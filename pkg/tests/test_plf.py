from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lineprox import FLOAT_TOL, LinearPiece, PLF, make_r2
from lineprox.explicit_chain import build_chain
from lineprox.instance import instance_from_gaps

F = Fraction


class TestMakeR2:
    def test_unit_gaps(self):
        f = make_r2(1.0, 1.0)
        assert f.breakpoints == (2.0,)
        assert f.slopes == (4.0, 3.0)
        assert f.intercepts == (-2.0, 0.0)

    def test_value_at_zero_is_negated_coupling(self):
        f = make_r2(1.0, 1.0)
        assert f.value_at_zero() == -2.0

    def test_wide_second_gap(self):
        f = make_r2(1.0, 10.0)
        assert f.breakpoints == (0.2,)
        assert f.slopes == (400.0, 300.0)
        assert f.intercepts == (-20.0, 0.0)

    def test_nonpositive_gap(self):
        with pytest.raises(ValueError):
            make_r2(0.0, 1.0)


class TestEval:
    def test_at_breakpoint(self):
        assert make_r2(1.0, 1.0).eval(2.0) == 6.0

    def test_at_zero(self):
        assert make_r2(1.0, 1.0).eval(0.0) == -2.0

    def test_final_piece(self):
        assert make_r2(1.0, 1.0).eval(10.0) == 30.0

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            make_r2(1.0, 1.0).eval(-0.5)


class TestInverse:
    def test_zero_crossing(self):
        assert make_r2(1.0, 1.0).inverse(0.0) == 0.5

    def test_inverse_of_breakpoint_value(self):
        assert make_r2(1.0, 1.0).inverse(6.0) == 2.0

    def test_below_range(self):
        with pytest.raises(ValueError, match="below range"):
            make_r2(1.0, 1.0).inverse(-3.0)


class TestOp3:
    def test_unit_gaps(self):
        assert make_r2(F(1), F(1)).solve_op3(F(2)) == F(2, 3)

    def test_wide_gap(self):
        x = make_r2(F(1), F(10)).solve_op3(F(20))
        assert x == F(2, 21)
        assert x < F(1, 5)  # stays on the first piece

    def test_defining_equation(self):
        f = make_r2(3.0, 7.0)
        xi = 11.0
        x = f.solve_op3(xi)
        assert x + f.eval(x) / xi == pytest.approx(1.0, rel=1e-12)

    def test_root_exactly_at_breakpoint(self):
        # xi = 75 puts the root of x + R(x)/xi = 1 at the breakpoint 1/5,
        # where both adjacent pieces give the same solution
        f = make_r2(F(1), F(10))
        x = f.solve_op3(F(75))
        assert x == F(1, 5) == f.breakpoints[0]

    def test_nonpositive_xi(self):
        with pytest.raises(ValueError):
            make_r2(1.0, 1.0).solve_op3(0.0)


class TestRightSlope:
    def test_at_zero(self):
        assert make_r2(1.0, 1.0).right_slope(0.0) == 4.0

    def test_right_piece_governs_at_breakpoint(self):
        assert make_r2(1.0, 1.0).right_slope(2.0) == 3.0

    def test_interior(self):
        assert make_r2(1.0, 1.0).right_slope(1.0) == 4.0


class TestAppend:
    def test_append_creates_breakpoint(self):
        f = PLF(breakpoints=(), slopes=(4.0,), intercepts=(-2.0,), level=2)
        g = f.append(LinearPiece(3.0, 0.0), 2.0, FLOAT_TOL)
        assert g.breakpoints == (2.0,)
        assert g.piece_count == 2

    def test_collinear_merge(self):
        f = make_r2(1.0, 1.0)
        g = f.append(LinearPiece(3.0, 0.0), 5.0, FLOAT_TOL)
        assert g.piece_count == 2  # merged into the existing final piece

    def test_discontinuity_rejected(self):
        f = PLF(breakpoints=(), slopes=(4.0,), intercepts=(-2.0,), level=2)
        with pytest.raises(ValueError, match="discontinuity"):
            f.append(LinearPiece(2.0, 1.0), 2.0, FLOAT_TOL)

    def test_nonpositive_slope_rejected(self):
        f = make_r2(1.0, 1.0)
        with pytest.raises(ValueError):
            f.append(LinearPiece(-1.0, 20.0), 5.0, FLOAT_TOL)


class TestDump:
    def test_format(self):
        f = make_r2(F(1), F(1))
        assert f.dump() == "0 4 -2\n2 3 0"


class TestConstruction:
    def test_mismatched_lengths(self):
        with pytest.raises(ValueError):
            PLF(breakpoints=(1.0,), slopes=(1.0,), intercepts=(0.0,))

    def test_descending_breakpoints(self):
        with pytest.raises(ValueError):
            PLF(breakpoints=(2.0, 1.0), slopes=(1.0, 1.0, 1.0),
                intercepts=(0.0, 0.0, 0.0))


@st.composite
def exact_chain_functions(draw):
    n = draw(st.integers(3, 8))
    gaps = draw(
        st.lists(st.integers(1, 30), min_size=n - 1, max_size=n - 1).map(
            lambda gs: [F(g) for g in gs]
        )
    )
    inst = instance_from_gaps(gaps)
    chain = build_chain(inst)
    level = draw(st.integers(2, n - 1))
    return chain.function(level)


@settings(max_examples=40, deadline=None)
@given(f=exact_chain_functions(), q=st.fractions(min_value=F(0), max_value=F(100), max_denominator=50))
def test_inverse_eval_roundtrip(f, q):
    assert f.inverse(f.eval(q)) == q
    y = f.value_at_zero() + q
    assert f.eval(f.inverse(y)) == y


@settings(max_examples=40, deadline=None)
@given(
    f=exact_chain_functions(),
    a=st.fractions(min_value=F(0), max_value=F(100), max_denominator=20),
    b=st.fractions(min_value=F(0), max_value=F(100), max_denominator=20),
)
def test_strictly_increasing(f, a, b):
    if a != b:
        lo, hi = (a, b) if a < b else (b, a)
        assert f.eval(lo) < f.eval(hi)


@settings(max_examples=40, deadline=None)
@given(f=exact_chain_functions(), xi=st.fractions(min_value=F(1, 4), max_value=F(5000), max_denominator=16))
def test_op3_defining_property_and_bracket(f, xi):
    x = f.solve_op3(xi)
    assert x + f.eval(x) / xi == 1
    w0 = f.inverse(0)
    if w0 < 1:
        assert w0 < x < 1
