from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from perfcodes.exactmath import binom
from perfcodes.johnson import Code, configuration_distribution
from perfcodes import moments as M

PAIR = Code.of(6, 3, [(0, 1, 2), (3, 4, 5)])
PAIR10 = Code.of(10, 5, [(0, 1, 2, 3, 4), (5, 6, 7, 8, 9)])


def test_strength_e1_paths_agree():
    for n in range(2, 61):
        for w in range(1, n // 2 + 1):
            s = M.strength(n, w, 1).phi
            assert s == M.strength_scan(n, w, 1)
            if s is not None:
                assert M.strength_from_moment_relation(n, w) == s


def test_strength_pair_codes():
    assert M.strength(6, 3, 1).phi == 1
    s = M.strength(10, 5, 2)
    assert s.branches == (1, 3) and s.phi == 1
    assert M.strength_scan(10, 5, 2) == 1


def test_strength_complement_symmetric():
    assert M.strength(14, 9, 1) == M.strength(14, 5, 1)


def test_sigma_e1_root():
    # sigma_1 vanishes at t = phi + 1 for the pair code
    assert M.sigma_e(6, 3, 2, 1) == 0


def test_recurrence_reproduces_pair_distribution():
    measured = configuration_distribution(PAIR, block=(0, 1, 2)).counts
    sol = M.config_recurrence_solve(6, 3, 3, {3: 1})
    assert sol.values == tuple(Fraction(c) for c in measured)
    assert sol.passed


def test_printed_mid_coefficient_is_wrong():
    # the printed 1 + i(k-1) + ... leaves residual 6 on the pair code at i = 3
    values = {0: 1, 1: 0, 2: 0, 3: 1}
    assert M.recurrence_residual(values, 3, 3, 3, 0, "corrected") == 0
    assert M.recurrence_residual(values, 3, 3, 3, 0, "printed") == 6


def test_recurrence_translate_matches_enumeration():
    d = configuration_distribution(PAIR, leader=1)
    sol = M.config_recurrence_solve(6, 3, 3, {3: 0, 2: 1})
    assert sol.values == tuple(Fraction(c) for c in d.counts)


def test_recurrence_boundary_errors():
    with pytest.raises(M.InconsistentBoundaryError):
        M.config_recurrence_solve(6, 3, 3, {2: 1})
    with pytest.raises(M.InconsistentBoundaryError):
        M.config_recurrence_solve(6, 3, 3, {3: 1, 2: 5})


def test_closed_forms_match_recurrence_up_to_60():
    for n in range(2, 61):
        for w in range(1, n // 2 + 1):
            phi = M.strength(n, w, 1).phi
            if phi is None:
                continue
            al, tr = M.aligned_and_translate(n, w)
            for k in range(phi + 1, w + 1):
                closed = M.delta_moments_1perfect(n, w, k)
                assert closed == M.MomentTriple(al.moment(k) - tr.moment(k), tr.moment(k), al.moment(k))
                assert M.prop48_residual(n, w, k, closed.delta, M.delta_moment_1perfect(n, w, k - 1)) == 0


def test_printed_b_moment_only_right_at_n_eq_2w():
    assert M.delta_moments_1perfect_printed_b(6, 3, 2) == M.delta_moments_1perfect(6, 3, 2).b
    # n = 2w + a with a > 0: the distance-count variant disagrees
    n, w, k = 21, 7, 6
    assert M.delta_moments_1perfect_printed_b(n, w, k) != M.delta_moments_1perfect(n, w, k).b


def test_table_expressions_match_closed_forms():
    ex = M.table_expressions()
    for w in range(20, 30):
        for a in range(0, 8):
            assert ex["delta_w5"](w, a) == M.closed_delta_w5(w, a)
            assert ex["A_w5"](w, a) == M.closed_A_w5(w, a)
            assert ex["B_w5"](w, a) == M.closed_B_w5(w, a)
            assert ex["C_w3"](w, a) == M.closed_C_w3(w, a)
    assert ex["C_w3"](25, 12) != M.closed_C_w3_literal(25, 12)
    assert [ex[k].denominator() for k in ("delta_w5", "A_w5", "B_w5", "C_w3")] == [14400, 14400, 720, 720]


def test_two_perfect_closed_forms():
    for (j, leader), f in M.CLOSED_2PERFECT.items():
        for w in range(j + 1, j + 40):
            assert f(w) == M.delta_moments_2perfect(w, w - j, leader), (j, leader, w)


def test_j5_leader1_listed_form_is_wrong():
    w = 22
    good = M.delta_moments_2perfect(w, w - 5, 1)
    assert M.CLOSED_2PERFECT[(5, 1)](w) == good
    assert M.closed_2perfect_j5_leader1_as_listed(w) != good


def test_prop49_residual_vanishes():
    for w in range(6, 40):
        for leader in (1, 2):
            m = M.delta_moments_2perfect_all(w, leader)
            for k in range(2, w + 1):
                assert M.prop49_residual(w, k, m[k], m[k - 1], m[k - 2]) == 0


def test_two_perfect_moments_match_pair_enumeration():
    dists = M.measured_distributions(PAIR10, 2)
    for leader in (1, 2):
        delta = [Fraction(a) - Fraction(b) for a, b in zip(dists[0], dists[leader])]
        for k in range(2, 6):
            assert M.binomial_moment(delta, k) == M.delta_moments_2perfect(5, k, leader)


def test_two_cover_recurrence_matches_pair():
    dists = M.measured_distributions(PAIR10, 2)
    for leader in (0, 1, 2):
        sol = M.config_recurrence_solve_2perfect(5, leader)
        assert sol.consistent
        assert sol.values == tuple(Fraction(c) for c in dists[leader])


def test_two_cover_coefficient_uses_w_minus_i():
    # row sums of the covering coefficients equal the 2-sphere size for every i
    w = 9
    for i in range(w + 1):
        cp2, cp1, c0, cm1, cm2, _ = M.two_cover_coefficients(i, w)
        assert cm2 == binom(w - i + 2, 2) ** 2


def test_moment_identity_on_pair():
    for k in range(1, 4):
        assert M.moment_identity_J2w(PAIR, k, 1).holds
    a = configuration_distribution(PAIR, block=(0, 1, 2)).by_distance()
    for k in range(1, 4):
        assert M.prop52_sides(a, 3, k).holds


def test_lemma44_low_moments_agree():
    dists = M.measured_distributions(PAIR, 1)
    for r in range(0, 2):
        for dist in (dists[0], dists[1]):
            assert M.binomial_moment(dist, r) == M.lemma44_value(6, 3, 1, 3, r)


@settings(max_examples=60)
@given(st.lists(st.integers(-20, 20), min_size=1, max_size=8), st.integers(0, 6))
def test_power_and_binomial_moments_vanish_together(delta, t):
    assert M.stirling_moment_equivalence(delta, t).equivalent
    for r in range(t + 1):
        assert M.power_moment(delta, r) == M.power_moment_via_stirling(delta, r)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 40), st.integers(0, 30))
def test_prop48_relation(w, a):
    n = 2 * w + a
    for k in range(1, w + 1):
        assert M.prop48_residual(n, w, k, M.delta_moment_1perfect(n, w, k), M.delta_moment_1perfect(n, w, k - 1)) == 0


@settings(max_examples=80)
@given(st.integers(1, 40), st.data())
def test_distance_indexed_counting_identity(n, data):
    w = data.draw(st.integers(0, n))
    k = data.draw(st.integers(0, w))
    lhs = sum(binom(i, k) * binom(w, i) * binom(n - w, i) for i in range(w + 1))
    assert lhs == binom(n - w, k) * binom(n - k, w - k)
    # ones-indexed form used for the A/B moments
    ones = sum(binom(i, k) * binom(w, i) * binom(n - w, w - i) for i in range(w + 1))
    assert ones == M.covering_moment(n, w, k) == binom(w, k) * binom(n - k, w - k)
