from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lineprox import (
    allpairs_q,
    build_instance,
    check_kkt,
    compute_q,
    instance_from_gaps,
    is_feasible,
    redistribute_weight,
)
from lineprox.instance import constraint_slacks, quality_gradient

F = Fraction


class TestBuildInstance:
    def test_four_point_example(self):
        inst = build_instance([0, 1, 1.5, 2.5])
        assert inst.gaps == (1.0, 0.5, 1.0)
        assert inst.couplings == (1.0, 1.0)

    def test_two_points(self):
        inst = build_instance([0, 1])
        assert inst.gaps == (1.0,)
        assert inst.couplings == ()

    def test_unsorted_input_is_sorted(self):
        inst = build_instance([3, 1, 2])
        assert inst.gaps == (1.0, 1.0)

    def test_duplicates_rejected(self):
        with pytest.raises(ValueError, match="degenerate gap"):
            build_instance([0, 1, 1, 2])

    def test_too_few_points(self):
        with pytest.raises(ValueError):
            build_instance([1.0])

    def test_exact_detection(self):
        assert build_instance([F(0), F(1), F(2)]).exact
        assert not build_instance([0.0, 1.0, 2.0]).exact

    def test_from_gaps_validates(self):
        with pytest.raises(ValueError):
            instance_from_gaps([1.0, -2.0])


class TestComputeQ:
    def test_paper_four_point_optimum(self):
        inst = instance_from_gaps([1.0, 0.5, 1.0])
        assert compute_q(inst, (1.0, 2.0, 1.0)) == 2.0

    def test_single_gap(self):
        inst = instance_from_gaps([1.0])
        assert compute_q(inst, (1.0,)) == 2.0

    def test_two_unit_gaps(self):
        inst = instance_from_gaps([1.0, 1.0])
        assert compute_q(inst, (1.0, 1.0)) == 2.0

    def test_length_mismatch(self):
        inst = instance_from_gaps([1.0, 1.0])
        with pytest.raises(ValueError):
            compute_q(inst, (1.0,))


class TestFeasibility:
    def test_paper_example_feasible(self):
        inst = instance_from_gaps([1.0, 0.5, 1.0])
        assert is_feasible(inst, (1.0, 2.0, 1.0))

    def test_zero_middle_weight_boundary(self):
        # n = 4: the only pair constraint is w2 + w3 >= 1, satisfied at 0 + 1
        inst = instance_from_gaps([1.0, 1.0, 1.0])
        assert is_feasible(inst, (1.0, 0.0, 1.0))

    def test_first_weight_too_small(self):
        inst = instance_from_gaps([1.0, 1.0])
        assert not is_feasible(inst, (0.5, 1.0))

    def test_interior_pair_violated(self):
        inst = instance_from_gaps([1.0, 1.0, 1.0, 1.0])
        assert not is_feasible(inst, (1.0, 0.4, 0.4, 1.0))

    def test_slacks_order(self):
        inst = instance_from_gaps([1.0, 1.0, 1.0])
        assert constraint_slacks(inst, (2.0, 1.0, 3.0)) == [1.0, 3.0, 2.0]


class TestGradient:
    def test_symmetric_pair(self):
        inst = instance_from_gaps([1.0, 1.0])
        assert quality_gradient(inst, (1.0, 1.0)) == [2.0, 2.0]

    def test_zero_vector(self):
        inst = instance_from_gaps([1.0, 1.0])
        assert quality_gradient(inst, (0.0, 0.0)) == [0.0, 0.0]

    def test_matches_finite_differences(self):
        inst = instance_from_gaps([1.0, 3.0, 2.0, 5.0])
        w = (1.3, 0.7, 2.1, 1.0)
        g = quality_gradient(inst, w)
        h = 1e-6
        for i in range(4):
            wp = list(w)
            wm = list(w)
            wp[i] += h
            wm[i] -= h
            fd = (compute_q(inst, wp) - compute_q(inst, wm)) / (2 * h)
            assert abs(fd - g[i]) <= 1e-6 * max(1.0, abs(g[i]))


class TestCheckKKT:
    def test_paper_optimum_valid(self):
        inst = instance_from_gaps([1.0, 0.5, 1.0])
        cert = check_kkt(inst, (1.0, 2.0, 1.0))
        assert cert.valid
        assert cert.min_multiplier >= 0

    def test_small_valid(self):
        inst = instance_from_gaps([F(1), F(1)])
        cert = check_kkt(inst, (F(1), F(1)))
        assert cert.valid
        assert cert.stationarity_residual == 0

    def test_stationarity_failure_detected(self):
        inst = instance_from_gaps([1.0, 0.5, 1.0])
        cert = check_kkt(inst, (1.0, 1.0, 1.0))
        assert not cert.valid
        assert cert.stationarity_residual == pytest.approx(1.0)

    def test_infeasible_rejected(self):
        inst = instance_from_gaps([1.0, 1.0])
        with pytest.raises(ValueError, match="infeasible"):
            check_kkt(inst, (0.1, 1.0))

    def test_exact_certificate_is_exact(self):
        inst = instance_from_gaps([F(1), F(1, 2), F(1)])
        cert = check_kkt(inst, (F(1), F(2), F(1)))
        assert cert.valid
        assert cert.stationarity_residual == 0
        assert cert.max_complementarity_violation == 0


class TestRedistribute:
    def test_symmetric_triple(self):
        pts = [F(0), F(1), F(2)]
        w = [[F(0)] * 3 for _ in range(3)]
        w[0][2] = w[2][0] = F(1)
        out = redistribute_weight(pts, w, 0, 1, 2)
        assert out[0][1] == 2 and out[1][2] == 2 and out[0][2] == 0
        assert allpairs_q(pts, out) == allpairs_q(pts, w)

    def test_asymmetric_lengths(self):
        pts = [F(0), F(1), F(3)]
        w = [[F(0)] * 3 for _ in range(3)]
        w[0][2] = w[2][0] = F(1)
        out = redistribute_weight(pts, w, 0, 1, 2)
        assert out[0][1] == 3
        assert out[1][2] == F(3, 2)

    def test_zero_weight_errors(self):
        pts = [F(0), F(1), F(2)]
        w = [[F(0)] * 3 for _ in range(3)]
        with pytest.raises(ValueError):
            redistribute_weight(pts, w, 0, 1, 2)

    def test_bad_index_order(self):
        pts = [F(0), F(1), F(2)]
        w = [[F(1)] * 3 for _ in range(3)]
        with pytest.raises(ValueError):
            redistribute_weight(pts, w, 1, 0, 2)

    @settings(max_examples=50)
    @given(data=st.data())
    def test_q_invariant_on_random_triples(self, data):
        n = data.draw(st.integers(3, 6))
        coords = data.draw(
            st.lists(
                st.fractions(min_value=F(0), max_value=F(50), max_denominator=8),
                min_size=n,
                max_size=n,
                unique=True,
            )
        )
        pts = sorted(coords)
        w = [[F(0)] * n for _ in range(n)]
        entries = data.draw(
            st.lists(
                st.fractions(min_value=F(0), max_value=F(5), max_denominator=6),
                min_size=n * (n - 1) // 2,
                max_size=n * (n - 1) // 2,
            )
        )
        it = iter(entries)
        for i in range(n):
            for j in range(i + 1, n):
                w[i][j] = w[j][i] = next(it)
        i = data.draw(st.integers(0, n - 3))
        j = data.draw(st.integers(i + 1, n - 2))
        k = data.draw(st.integers(j + 1, n - 1))
        if w[i][k] == 0:
            w[i][k] = w[k][i] = F(1)
        before = allpairs_q(pts, w)
        out = redistribute_weight(pts, w, i, j, k)
        assert allpairs_q(pts, out) == before
        # row sums may only grow
        for r in range(n):
            assert sum(out[r]) >= sum(w[r])
