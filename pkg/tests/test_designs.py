from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from perfcodes.designs import (BlockDesign, DoublySteinerParams, NotSteinerError, anticode_inequality, code_strength,
                               derived_design, divisibility_ratios, doubly_steiner_bounds, doubly_steiner_check,
                               figure1, incidence_matrix, lambda_s, min_h_distance, steiner_admissible,
                               steiner_conditions, tits_bound_holds, verify_design)
from perfcodes.exactmath import binom
from perfcodes.johnson import Code, DoublyCode


def test_fano_plane():
    d = figure1()
    assert verify_design(d, 2) == 1
    assert verify_design(d, 1) == 3
    assert verify_design(d, 0) == 7
    assert code_strength(d) == 2
    assert min_h_distance(d) == 4
    # diameter-perfect equality for S(2,3,7)
    assert d.b * binom(5, 1) == binom(7, 3)


def test_not_a_design():
    d = BlockDesign(4, ((0, 1, 2), (0, 1, 3)))
    assert verify_design(d, 2) is None


def test_single_block_strength_zero():
    assert code_strength(BlockDesign(5, ((0, 1),))) == 0
    assert code_strength(BlockDesign(3, ((0, 1, 2),))) == 3


def test_steiner_conditions():
    assert steiner_conditions(2, 3, 7).blocks == 7
    v = steiner_conditions(2, 3, 8)
    assert not v.admissible
    assert v.first_failure().name == "ratio[0]" and v.first_failure().value == Fraction(28, 3)
    v = steiner_conditions(2, 4, 9)
    assert v.first_failure().name == "ratio[1]" and v.first_failure().value == Fraction(8, 3)
    assert steiner_admissible(2, 3, 9)
    assert steiner_admissible(3, 4, 2)  # out of range counts as not applicable


@given(st.integers(1, 4), st.integers(1, 8), st.integers(1, 40))
def test_ratio_definition(t, w, n):
    if not t <= w <= n:
        return
    rs = divisibility_ratios(t, w, n)
    assert rs[0] == Fraction(binom(n, t), binom(w, t))
    assert rs[-1] == 1


def test_derived_design():
    d = derived_design(figure1(), 0)
    assert d.blocks == ((0, 2), (3, 4), (1, 5))
    assert code_strength(d) == 1
    with pytest.raises(NotSteinerError):
        derived_design(BlockDesign(4, ((0, 1, 2), (0, 1, 3))), 0, t=2)


def test_incidence_matrix():
    m = incidence_matrix(figure1())
    assert m.shape == (7, 7)
    assert (m.sum(axis=1) == 3).all() and (m.sum(axis=0) == 3).all()
    # two lines of the Fano plane meet in exactly one point
    g = m @ m.T
    assert (g[~np.eye(7, dtype=bool)] == 1).all()


def test_lambda_s():
    assert lambda_s(2, 3, 7, 1, 1) == 3
    assert lambda_s(2, 3, 7, 1, 0) == 7


def test_doubly_steiner_bounds_and_pair():
    p = DoublySteinerParams(1, 2, 3, 4, 7, 9)
    b = doubly_steiner_bounds(p)
    assert (b.n1_min, b.n2_min) == (7, 9)
    assert b.label == "theorem"
    code = DoublyCode.of(2, 1, 4, 2, [(0, 2, 3), (1, 4, 5)])
    v = doubly_steiner_check(DoublySteinerParams(1, 0, 1, 2, 2, 4), code)
    assert v.cover_ok and v.diameter_perfect_ok
    assert doubly_steiner_bounds(DoublySteinerParams(2, 1, 3, 2, 9, 5)).label == "by symmetry"
    assert doubly_steiner_bounds(DoublySteinerParams(1, 1, 1, 1, 3, 3)).label == "vacuous"


def test_anticode_inequality_iff_tits_small():
    for n in range(5, 25):
        for w in range(3, n):
            for t in range(2, w):
                assert anticode_inequality(n, w, t) == tits_bound_holds(n, w, t)


@settings(max_examples=25, deadline=None)
@given(st.integers(4, 9), st.data())
def test_strength_matches_brute_force(n, data):
    w = data.draw(st.integers(1, n - 1))
    blocks = data.draw(st.sets(st.sampled_from(list(combinations(range(n), w))), min_size=1, max_size=6))
    d = BlockDesign(n, tuple(sorted(blocks)))
    s = code_strength(d)
    for t in range(1, s + 1):
        assert verify_design(d, t) is not None
    if s < w:
        assert verify_design(d, s + 1) is None


def test_from_code_roundtrip():
    d = figure1()
    assert BlockDesign.from_code(d.to_code()).to_code() == d.to_code()
    assert isinstance(d.to_code(), Code)
