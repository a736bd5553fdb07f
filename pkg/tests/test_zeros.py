"""Tests for boundary zero counting, predictions, probes, and the audit."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eisenzeros.delta import WeightPair, arc_real, m_main, p_main
from eisenzeros.zeros import (DominanceCertificateError, PredictedCounts,
                              SignUncertainError, ZeroBracket, arc_evaluator,
                              arc_sample_points, audit, count_arc_zeros,
                              count_side_zeros, count_sign_changes,
                              expected_boundary_counts, extra_zero_probe,
                              interior_zero_hunt, predicted_counts,
                              side_evaluator, side_sample_points,
                              side_upper_cutoff, stabilization_point,
                              trivial_orders)

even_l = st.integers(min_value=7, max_value=50).map(lambda t: 2 * t)
small_n = st.integers(min_value=0, max_value=6)
even_j = st.sampled_from([0, 2, 4, 6, 8, 10])


def make_pair(l, n, j):
    return WeightPair(l + 12 * n + j, l)


class TestSampleCombs:
    def test_arc_counts(self):
        assert len(arc_sample_points((56, 20))) == 3
        assert len(arc_sample_points((64, 20))) == 4

    def test_arc_empty_for_equal_weights(self):
        assert arc_sample_points((20, 20)) == []

    @given(even_l, small_n, even_j)
    @settings(max_examples=60, deadline=None)
    def test_arc_comb_shape(self, l, n, j):
        wp = make_pair(l, n, j)
        if wp.k == wp.l:
            return
        pts = arc_sample_points(wp)
        expect = n if j in (0, 2, 6) else n + 1
        assert len(pts) == expect
        for th in pts:
            assert math.pi / 3 < th <= math.pi / 2 + 1e-15
        assert all(b > a for a, b in zip(pts, pts[1:]))

    def test_side_counts(self):
        assert len(side_sample_points(24)) == 3  # d in 1..q-1, q = 4
        assert len(side_sample_points(20)) == 3  # d in 1..q, q = 3
        assert len(side_sample_points(22)) == 3  # d in 2..q+1, q = 3
        with pytest.raises(ValueError):
            side_sample_points(12)

    @given(even_l)
    @settings(max_examples=40, deadline=None)
    def test_side_comb_in_open_interval(self, l):
        for th in side_sample_points(l):
            assert math.pi / 3 < th < math.pi / 2

    @given(even_l, small_n, even_j)
    @settings(max_examples=40, deadline=None)
    def test_arc_alternation_bound(self, l, n, j):
        wp = make_pair(l, n, j)
        floor = {0: 1.5, 2: 0.8, 4: 0.31}[l % 6]
        for m, th in zip(range((12 * n + j) // 6 + 1, 10 ** 9),
                         arc_sample_points(wp)):
            assert (-1) ** m * m_main(wp, th) >= floor

    @given(even_l, small_n, even_j)
    @settings(max_examples=40, deadline=None)
    def test_side_alternation_bound(self, l, n, j):
        wp = make_pair(l, n, j)
        q, a = divmod(l, 6)
        d0 = 1 if a in (0, 2) else 2
        for d, th in zip(range(d0, 10 ** 9), side_sample_points(l)):
            assert (-1) ** d * p_main(wp, th) >= 0.17


class TestPredictedCounts:
    def test_stabilization_examples(self):
        assert math.ceil(stabilization_point(42, 2)) == 57
        assert math.ceil(stabilization_point(22, 0)) == 81
        assert stabilization_point(20, 6) == 20.0

    def test_n_prime_example(self):
        pc = predicted_counts((58, 22))
        assert pc.N_prime == 2
        assert pc.sp == stabilization_point(22, 0)

    @given(even_l, small_n, even_j)
    @settings(max_examples=80, deadline=None)
    def test_count_sandwich(self, l, n, j):
        pc = predicted_counts(make_pair(l, n, j))
        assert pc.N <= pc.N_prime <= pc.N + 1
        assert pc.T <= pc.T_prime
        assert pc.sp >= l

    @given(even_l, small_n, even_j)
    @settings(max_examples=80, deadline=None)
    def test_expected_counts_sum_to_total(self, l, n, j):
        wp = make_pair(l, n, j)
        pc = predicted_counts(wp)
        a, b = expected_boundary_counts(wp, pc)
        assert a + b == pc.total_nontrivial

    def test_trivial_orders_table(self):
        assert trivial_orders(24) == (0, 0)
        assert trivial_orders(26) == (1, 2)
        assert trivial_orders(28) == (0, 1)
        assert trivial_orders(30) == (1, 0)
        assert trivial_orders(32) == (0, 2)
        assert trivial_orders(34) == (1, 1)
        with pytest.raises(ValueError):
            trivial_orders(21)
        with pytest.raises(ValueError):
            trivial_orders(14)

    @given(st.integers(min_value=8, max_value=200).map(lambda t: 2 * t))
    @settings(max_examples=60, deadline=None)
    def test_trivial_orders_make_count_integral(self, w):
        v_i, v_rho = trivial_orders(w)
        # w/12 - v_i/2 - v_rho/3 must be an integer
        assert (w - 6 * v_i - 4 * v_rho) % 12 == 0

    def test_order_probe_at_rho(self):
        # total weight 20 forces a double zero at rho and none at i; the
        # one-sided log2 ratio of the arc restriction estimates the order
        wp = WeightPair(16, 4)
        assert trivial_orders(20) == (0, 2)
        h = 1e-3
        f1 = arc_real(wp, math.pi / 3 + h)
        f2 = arc_real(wp, math.pi / 3 + 2 * h)
        order = math.log2(abs(f2 / f1))
        assert abs(order - 2) < 0.05
        assert abs(arc_real(wp, math.pi / 2)) > 0.5


class TestCountSignChanges:
    def test_alternating(self):
        vals = [1.0, -1.0, 1.0, -1.0]
        ev = lambda x, eps: (vals[int(x)], 1e-15)
        assert count_sign_changes(ev, [0, 1, 2, 3]) == 3

    def test_constant(self):
        ev = lambda x, eps: (1.0, 1e-15)
        assert count_sign_changes(ev, [0.0, 1.0, 2.0]) == 0

    def test_requires_increasing(self):
        ev = lambda x, eps: (1.0, 1e-15)
        with pytest.raises(ValueError):
            count_sign_changes(ev, [0.0, 0.0, 1.0])

    def test_uncertain_raises_with_count(self):
        ev = lambda x, eps: (5e-14, max(eps, 1e-13))
        with pytest.raises(SignUncertainError) as info:
            count_sign_changes(ev, [0.0, 1.0, 2.0])
        assert info.value.uncertain == 3
        assert len(info.value.points) == 3

    def test_escalation_resolves(self):
        # uncertain at 1e-12 and 1e-14, certified positive at 1e-15
        ev = lambda x, eps: (5e-14, eps)
        assert count_sign_changes(ev, [0.0, 1.0]) == 0

    def test_arc_comb_with_corner_probe(self):
        # the comb alone shows 2 changes; prepending the corner-side probe
        # point exposes the third
        wp = WeightPair(56, 20)
        pts = arc_sample_points(wp)
        probe = math.pi / 3 + (pts[0] - math.pi / 3) / 8.0
        ev = arc_evaluator(wp)
        assert count_sign_changes(ev, pts) == 2
        assert count_sign_changes(ev, [probe] + pts) == 3


class TestScans:
    def test_arc_count_example(self):
        a, locs = count_arc_zeros((56, 20))
        assert a == 3
        assert len(locs) == 3
        for br in locs:
            assert br.kind == "arc"
            assert br.width <= 1e-12
            assert br.sign_lo * br.sign_hi == -1
            assert math.pi / 3 < br.location < math.pi / 2
        mids = [b.location for b in locs]
        assert all(b2.lo > b1.hi for b1, b2 in zip(locs, locs[1:]))

    def test_side_count_examples(self):
        assert count_side_zeros((56, 22))[0] == 3
        assert count_side_zeros((56, 42))[0] == 5
        assert count_side_zeros((68, 42))[0] == 6

    def test_side_brackets_sound(self):
        b, locs = count_side_zeros((56, 22))
        y_max = side_upper_cutoff((56, 22))
        for br in locs:
            assert br.kind == "side"
            assert br.width <= 1e-12
            assert br.sign_lo * br.sign_hi == -1
            assert math.sqrt(3) / 2 < br.location < y_max

    def test_cutoff_certificate_is_sound(self):
        # above y_max the side restriction is certifiably nonzero
        wp = WeightPair(56, 22)
        y_max = side_upper_cutoff(wp)
        ev = side_evaluator(wp)
        for y in (y_max + 0.05, y_max + 0.5, y_max + 2.0):
            val, err = ev(y, 1e-12)
            assert abs(val) > 10 * err

    def test_equidistribution_window(self):
        # for k - l >= 120 every comb window far enough from the corner
        # holds exactly one refined zero
        a, locs = count_arc_zeros((140, 20))
        mids = [b.location for b in locs]
        w = 2 * math.pi / 120
        for m in range(24, 29):
            lo, hi = m * w, (m + 1) * w
            assert hi < math.pi / 2
            assert sum(1 for t in mids if lo < t < hi) == 1

    def test_quarter_turn_zero_for_n0(self):
        # k = l + 8 pairs carry exactly one arc zero
        for l in (40, 54, 68):
            assert count_arc_zeros((l + 8, l))[0] == 1

    def test_no_arc_zero_other_n0_classes(self):
        for kp in (0, 2, 4, 6, 10):
            assert count_arc_zeros((40 + kp, 40))[0] == 0


class TestExtraZeroProbe:
    def test_corner_value_class(self):
        res = extra_zero_probe((48, 24))  # j = 0, l = 0 mod 6: corner +6
        assert res.arc_extra is True
        assert res.side_extra is True
        assert "arc" in res.witness and "side" in res.witness
        assert res.notes == ()

    def test_second_derivative_class_post_stabilization(self):
        res = extra_zero_probe((62, 24))  # j = 2, l = 0 mod 6, k > sp
        assert res.arc_extra is False
        assert res.side_extra is True

    def test_stabilization_flips_side_probe(self):
        pre = extra_zero_probe((56, 42))   # k < sp_2(42) = 57
        post = extra_zero_probe((68, 42))
        assert pre.side_extra is False
        assert post.side_extra is True

    def test_n0_probe(self):
        res = extra_zero_probe((48, 40))
        assert res.arc_extra is True
        lo, hi = res.witness["arc"]
        assert math.pi / 3 < lo < hi <= math.pi / 2
        ev = arc_evaluator(WeightPair(48, 40))
        v_lo, e_lo = ev(lo, 1e-13)
        v_hi, e_hi = ev(hi, 1e-13)
        assert v_lo * v_hi < 0
        assert abs(v_lo) > 10 * e_lo and abs(v_hi) > 10 * e_hi

    def test_uncovered_class_raises(self):
        # l = 2 mod 6 with j = 4: both corner values vanish and no
        # closed-form derivative exists on either boundary piece
        with pytest.raises(ValueError, match="no corner probe"):
            extra_zero_probe((60, 20))

    def test_witness_brackets_certified(self):
        res = extra_zero_probe((48, 24))
        ev = arc_evaluator(WeightPair(48, 24))
        lo, hi = res.witness["arc"]
        v_lo, _ = ev(lo, 1e-13)
        v_hi, _ = ev(hi, 1e-13)
        assert v_lo * v_hi < 0


class TestAudit:
    def test_stabilized_pair(self):
        r = audit((82, 22))
        assert (r.A, r.B) == (4, 3)
        assert r.valence_ok
        assert r.findings == ()
        assert (r.predicted_A, r.predicted_B) == (4, 3)

    def test_pre_stabilization_pair(self):
        r = audit((70, 22))
        assert (r.A, r.B) == (4, 2)
        assert r.valence_ok
        assert r.findings == ()

    def test_locations_match_counts(self):
        r = audit((56, 20))
        arcs = [b for b in r.zero_locations if b.kind == "arc"]
        sides = [b for b in r.zero_locations if b.kind == "side"]
        assert len(arcs) == r.A and len(sides) == r.B

    def test_valence_scatter(self):
        for pair in [(14, 14), (100, 14), (44, 26), (98, 96), (100, 40)]:
            r = audit(pair)
            assert r.valence_ok, pair
            assert 12 * (r.A + r.B) + 6 * r.v_i + 4 * r.v_rho + 12 \
                == pair[0] + pair[1]

    def test_table_sample_cells(self):
        # one cell from each published row
        assert audit((56, 20)).A == 3
        assert audit((84, 24)).A == 5
        assert audit((58, 22)).B == 2

    def test_small_n0_pair_keeps_valence(self):
        # below the effective range the closed-form prediction is only
        # informational; the measured counts still satisfy the valence
        r = audit((26, 18))
        assert r.valence_ok
        assert r.A + r.B == 2


class TestInteriorHunt:
    def test_clean_on_reference_pairs(self):
        assert interior_zero_hunt((56, 20)) == ()
        assert interior_zero_hunt((82, 22)) == ()

    def test_clean_on_near_equal_weights(self):
        # regression: the direct product evaluation cancels catastrophically
        # here and used to masquerade as an interior zero
        assert interior_zero_hunt((100, 98)) == ()
