import math

import pytest
from hypothesis import given, strategies as st

from perfcodes.exactmath import is_square
from perfcodes.pell import (N_LIMIT, PellSolution, c2_binomial, d2_binomial, exclusion_scan, mod3_binomial_sum,
                            pell_family, pell_index, pell_odd_family, pell_w_values, table3_rows, table3_tsv,
                            theorem50_report, x_binomial)

# printed columns of the Pell table: t, 1+4(x-y), 1+4(x+y), and x or w where shown
PRINTED = {
    0: (1, 9, 1, 2),
    1: (49, 281, 41, 22),
    2: (1633, 9513, 1393, None),
    3: (55441, 323129, 47321, None),
    4: (1883329, 10976841, 1607521, None),
    5: (63977713, 372889433, None, None),
    6: (2173358881, 12667263849, None, None),
    7: (73830224209, 430314081401, None, None),
    8: (2508054264193, 14618011503753, None, 1070379110498),
    9: (85200014758321, 496582077046169, None, 36361380737782),
    10: (2894292447518689, 16869172608065961, None, 1235216565974042),
}


def test_table_matches_printed_values():
    rows = table3_rows()
    assert [r[0] for r in rows] == list(range(11))
    for t, d2, c2, x, w in rows:
        pd, pc, px, pw = PRINTED[t]
        assert (d2, c2) == (pd, pc)
        assert px is None or x == px
        assert pw is None or w == pw


def test_table_tsv_shape():
    lines = table3_tsv().splitlines()
    assert lines[0] == "t\t1+4(x-y)\t1+4(x+y)\tx\tw"
    assert len(lines) == 12


def test_solutions_are_exact():
    for s in pell_family(30):
        assert s.x * s.x - 2 * s.y * s.y == -1
    with pytest.raises(ValueError):
        PellSolution(0, 1, 2, 1)


def test_odd_family_and_power_form():
    # x + y*sqrt(2) = (1 + sqrt(2))^k, checked with integer arithmetic in Z[sqrt 2]
    a, b = 1, 0
    fam = pell_odd_family()
    for k in range(1, 40):
        a, b = a + 2 * b, a + b
        if k % 2 == 1:
            assert next(fam) == (k, a, b)


@given(st.integers(0, 40))
def test_binomial_expansions(t):
    s = pell_family(t)[-1]
    assert x_binomial(2 * t) == s.x
    assert c2_binomial(t) == s.c2
    assert d2_binomial(t) == s.d2


@given(st.integers(0, 60))
def test_mod3_criterion(m):
    x = x_binomial(m)
    assert (x % 3 == 1) == (mod3_binomial_sum(m) % 3 == 0)


def test_w_values_by_brute_force():
    brute = [w for w in range(2, 10**5) if is_square(2 * w * w - 6 * w + 5) is not None]
    assert pell_w_values(10**5 - 1) == brute


def test_exclusion_scan_default_limit():
    summary = exclusion_scan()
    assert summary.n_limit == N_LIMIT
    assert len(summary.reports) == 11
    assert summary.all_excluded
    for r in summary.reports:
        t = r.solution.t
        # t = 1 has 1+4(x-y) = 49 a square; from t = 2 on neither branch is integral
        if t > 1:
            assert "c_square+d_square" in r.reasons()
        # odd t gives x = 2 (mod 3) and w = 10 (mod 12)
        assert r.get("mod3").passed == r.get("mod12").passed == (t % 2 == 0)
        assert r.get("w_formula").passed


def test_t0_excluded_by_size_only():
    r = theorem50_report(pell_family(0)[0])
    assert r.excluded and r.reasons() == ["size"]
    assert r.square_branch_ok


def test_t1_fails_mod12():
    r = theorem50_report(pell_family(1)[1])
    assert r.solution.w == 22 and r.solution.w % 12 == 10
    assert r.reasons() == ["mod3", "mod12"]
    assert r.get("d_square").witness == (49, 7)


def test_pell_index():
    assert pell_index(22) == 1
    assert pell_index(1070379110498) == 8
    assert pell_index(23) is None
    # odd-exponent solutions outside the k = 4t+1 family
    assert pell_index(5) is None and is_square(2 * 25 - 30 + 5) == 5


def test_scan_stops_below_limit():
    assert len(exclusion_scan(100).reports) == 2
    assert all(2 * r.solution.w < 10**9 for r in exclusion_scan(10**9).reports)
    assert math.isqrt(16869172608065961) ** 2 != 16869172608065961
