"""Necessary conditions for e-perfect codes, applied to single points or ranges.

Every rule is a pure function of the parameters.  A rule fires ("fail") only
when it proves that no code with those parameters exists, and it always says
why through an exact witness.  Points in a trivial family are tagged and never
run through the rules.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import islice
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .designs import steiner_admissible
from .exactmath import binom, divides_binom, factorize, is_prime, is_square, is_squarefree
from .johnson import sphere_size, sphere_size_doubly
from .moments import (F2, G2, config_recurrence_solve, delta_2perfect_poly, delta_moments_1perfect,
                      strength, table_expressions)
from .pell import PellSolution, pell_index, pell_odd_family, theorem50_report

PASS, FAIL, UNKNOWN, NA, TRIVIAL = "pass", "fail", "unknown", "not-applicable", "trivial-family"
STATUSES = (PASS, FAIL, UNKNOWN, NA, TRIVIAL)


@dataclass(frozen=True)
class Verdict:
    rule: str
    status: str
    witness: tuple = ()

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.status == FAIL and not self.witness:
            raise ValueError(f"{self.rule}: a failure needs a witness")


@dataclass(frozen=True)
class JohnsonParams:
    n: int
    w: int
    e: int

    def __post_init__(self):
        if not 0 <= self.w <= self.n or self.e < 0:
            raise ValueError("need 0 <= w <= n and e >= 0")

    @property
    def a(self) -> int:
        return self.n - 2 * self.w

    def canonical(self) -> "JohnsonParams":
        """Complement into n >= 2w; perfectness is preserved."""
        return self if self.n >= 2 * self.w else JohnsonParams(self.n, self.n - self.w, self.e)

    def label(self) -> str:
        return f"n={self.n} w={self.w} e={self.e}"


@dataclass(frozen=True)
class DoublyParams:
    """Listed as (w1, n1, w2, n2, e)."""

    w1: int
    n1: int
    w2: int
    n2: int
    e: int

    def __post_init__(self):
        if not (0 <= self.w1 <= self.n1 and 0 <= self.w2 <= self.n2) or self.e < 0:
            raise ValueError("need 0 <= w1 <= n1, 0 <= w2 <= n2 and e >= 0")

    def label(self) -> str:
        return f"w1={self.w1} n1={self.n1} w2={self.w2} n2={self.n2} e={self.e}"


@dataclass(frozen=True)
class Report:
    params: object
    verdicts: tuple[Verdict, ...]
    trivial: Optional[str] = None

    @property
    def failed(self) -> list[str]:
        return [v.rule for v in self.verdicts if v.status == FAIL]

    @property
    def excluded(self) -> bool:
        return self.trivial is None and bool(self.failed)

    @property
    def survives(self) -> bool:
        return self.trivial is None and not self.failed

    @property
    def conclusion(self) -> str:
        if self.trivial is not None:
            return f"trivial({self.trivial})"
        if self.failed:
            return "excluded(" + ",".join(self.failed) + ")"
        return "survives-all-implemented-rules"

    def verdict(self, rule: str) -> Optional[Verdict]:
        return next((v for v in self.verdicts if v.rule == rule), None)

    def to_text(self) -> str:
        lines = [f"params: {self.params.label()}", "verdicts:"]
        for v in self.verdicts:
            lines.append(f"  - rule: {v.rule}")
            lines.append(f"    status: {v.status}")
            if v.witness:
                lines.append("    witness: " + format_witness(v.witness))
        lines.append(f"conclusion: {self.conclusion}")
        return "\n".join(lines) + "\n"

    def tsv_rows(self) -> list[str]:
        p = self.params
        if isinstance(p, JohnsonParams):
            head = [str(p.n), str(p.w), str(p.e), str(p.a)]
        else:
            head = [str(p.w1), str(p.n1), str(p.w2), str(p.n2), str(p.e)]
        if not self.verdicts:
            return ["\t".join(head + ["-", TRIVIAL if self.trivial else "-", self.trivial or "", self.conclusion])]
        return ["\t".join(head + [v.rule, v.status, format_witness(v.witness), self.conclusion])
                for v in self.verdicts]


TSV_HEADER = "\t".join(["n", "w", "e", "a", "rule", "status", "witness", "conclusion"])
TSV_HEADER_DOUBLY = "\t".join(["w1", "n1", "w2", "n2", "e", "rule", "status", "witness", "conclusion"])


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, tuple):
        return "(" + ",".join(_fmt(x) for x in v) + ")"
    return str(v)


def format_witness(witness: tuple) -> str:
    return "; ".join(f"{k}={_fmt(v)}" for k, v in witness)


# -- trivial families ------------------------------------------------------------

def classify_trivial(p) -> Optional[str]:
    """Tag for the perfect codes that always exist, else None."""
    if isinstance(p, DoublyParams):
        if p.e == 0:
            return "whole-space"
        # any single word once the radius reaches the diameter of the space
        if p.e >= min(p.w1, p.n1 - p.w1) + min(p.w2, p.n2 - p.w2):
            return "single-word"
        if p.n1 == 2 * p.w1 and p.n2 == 2 * p.w2 and (p.w1 + p.w2) % 2 == 1 and 2 * p.e + 1 == p.w1 + p.w2:
            return "disjoint-pair"
        return None
    c = p.canonical()
    if c.e == 0:
        return "whole-space"
    if c.e >= c.w:
        return "single-word"
    if c.n == 2 * c.w and c.w % 2 == 1 and 2 * c.e + 1 == c.w:
        return "disjoint-pair"
    return None


# -- per-point context with lazily computed shared quantities --------------------

class _Point:
    def __init__(self, p: JohnsonParams):
        self.n, self.w, self.e = p.n, p.w, p.e
        self.a = p.n - 2 * p.w

    @cached_property
    def phi_e(self) -> int:
        return sphere_size(self.n, self.w, self.e)

    @cached_property
    def phi_factors(self) -> Optional[dict[int, int]]:
        return factorize(self.phi_e)

    @cached_property
    def strength(self):
        return strength(self.n, self.w, self.e)

    @property
    def phi(self) -> Optional[int]:
        return self.strength.phi

    @property
    def d(self) -> Optional[int]:
        return None if self.phi is None else self.w - self.phi


def _result(status: str, *witness) -> tuple[str, tuple]:
    return status, tuple(witness)


def _needs_phi(ctx: _Point):
    if ctx.phi is None:
        return _result(NA, ("reason", "strength not integral"))
    return None


# -- the rules ---------------------------------------------------------------------

def _r_size(ctx):
    lo = 2 * ctx.e + 1
    if ctx.w < lo:
        return _result(FAIL, ("w", ctx.w), ("2e+1", lo))
    if ctx.n - ctx.w < lo:
        return _result(FAIL, ("n-w", ctx.n - ctx.w), ("2e+1", lo))
    return _result(PASS)


def _r_hammond(ctx):
    if ctx.a in (1, 2):
        return _result(FAIL, ("n-2w", ctx.a))
    return _result(PASS)


def _r_mod_e1(ctx):
    m = ctx.e + 1
    if (ctx.w - ctx.e) % m:
        return _result(FAIL, ("w mod (e+1)", ctx.w % m), ("e mod (e+1)", ctx.e % m))
    if (ctx.n - ctx.w - ctx.e) % m:
        return _result(FAIL, ("n-w mod (e+1)", (ctx.n - ctx.w) % m), ("e mod (e+1)", ctx.e % m))
    return _result(PASS)


def _r_t24(ctx):
    e, n, a = ctx.e, ctx.n, ctx.a
    q = (e + 1) * (e + 2)
    if e % 2 == 1:
        if n % 2:
            return _result(FAIL, ("n", n), ("reason", "e odd needs n even"))
        if a % q:
            return _result(FAIL, ("n-2w", a), ("(e+1)(e+2)", q))
    elif n % 2 == 0:
        if a % q:
            return _result(FAIL, ("n-2w", a), ("(e+1)(e+2)", q))
    else:
        if e % 4:
            return _result(FAIL, ("e mod 4", e % 4), ("reason", "e even, n odd needs e = 0 mod 4"))
        if a % (q // 2):
            return _result(FAIL, ("n-2w", a), ("(e+1)(e+2)/2", q // 2))
    return _result(PASS)


def _r_mod12(ctx):
    r1, r2 = ctx.w % 12, (ctx.n - ctx.w) % 12
    if (r1, r2) in ((1, 1), (7, 7)):
        return _result(PASS)
    return _result(FAIL, ("w mod 12", r1), ("n-w mod 12", r2))


def _r_mod4(ctx):
    if ctx.phi_e % 4 == 0:
        return _result(FAIL, ("Phi_1", ctx.phi_e), ("Phi_1 mod 4", 0))
    return _result(PASS)


def _steiner(*systems):
    """Each system is (t, k, v); those with v < k cannot be checked and are skipped."""
    checked = 0
    for t, k, v in systems:
        if v < k or k < t or t < 0:
            continue
        checked += 1
        if not steiner_admissible(t, k, v):
            for i in range(t + 1):
                r = Fraction(binom(v - i, t - i), binom(k - i, t - i))
                if r.denominator != 1:
                    return _result(FAIL, ("system", (t, k, v)), ("i", i), ("ratio", r))
    return _result(PASS) if checked else _result(NA, ("reason", "block size exceeds point count"))


def _r_t16(ctx):
    e = ctx.e
    return _steiner((e + 1, 2 * e + 1, ctx.w), (e + 1, 2 * e + 1, ctx.n - ctx.w))


def _r_t17(ctx):
    e = ctx.e
    return _steiner((2, e + 2, ctx.w - e + 1), (2, e + 2, ctx.n - ctx.w - e + 1))


def _r_c23(ctx):
    if ctx.w > ctx.n - ctx.w:
        return _result(NA, ("reason", "w > n-w"))
    return _steiner((2, ctx.e + 2, ctx.w + 2))


def _r_t22(ctx):
    # n < (w-1)(2e+1)/e, kept in integers
    if not ctx.n * ctx.e < (ctx.w - 1) * (2 * ctx.e + 1):
        return _result(NA, ("reason", "n >= (w-1)(2e+1)/e"))
    return _steiner((2, ctx.e + 2, ctx.n - ctx.w + 2))


def _r_strength(ctx):
    s = ctx.strength
    if s.phi is None:
        return _result(FAIL, ("path", s.path), ("discriminants", s.discriminants))
    return _result(PASS, ("phi", s.phi))


def _r_t38_mod12(ctx):
    if (r := _needs_phi(ctx)) is not None:
        return r
    if ctx.phi % 12 in (0, 1, 4, 9):
        return _result(PASS)
    return _result(FAIL, ("d", ctx.d), ("w-d mod 12", ctx.phi % 12))


def _r_pell(ctx):
    if ctx.a != 0:
        return _result(NA, ("reason", "n != 2w"))
    w = ctx.w
    x = 2 * w - 3
    y = is_square(2 * w * w - 6 * w + 5)
    if x < 1 or y is None:
        return _result(FAIL, ("2w^2-6w+5", 2 * w * w - 6 * w + 5), ("reason", "not a square"))
    t = pell_index(w)
    if t is None:
        # an odd-exponent solution outside k = 4t+1 has x = 3 mod 4, so w != 2 mod 12
        return _result(FAIL, ("x", x), ("w mod 12", w % 12), ("reason", "x not in the k = 4t+1 family"))
    rep = theorem50_report(PellSolution(t, 4 * t + 1, x, y), ctx.e)
    if rep.excluded:
        return _result(FAIL, ("t", t), ("failed", tuple(rep.reasons())))
    return _result(PASS, ("t", t))


def _r_c25(ctx):
    a = ctx.a
    if a < 2:
        return _result(NA, ("reason", "n-2w < 2"))
    f = factorize(a)
    if f is None:
        return _result(UNKNOWN, ("n-2w", a), ("reason", "factorization budget"))
    if len(f) == 1:
        (p, i), = f.items()
        return _result(FAIL, ("n-2w", a), ("form", "p^i"), ("p", p), ("i", i))
    if len(f) == 2 and all(v == 1 for v in f.values()):
        q, p = sorted(f)
        if p != 2 * q - 1:
            return _result(FAIL, ("n-2w", a), ("form", "pq"), ("p", p), ("q", q))
    return _result(PASS)


def _r_sphere_packing(ctx):
    ok, wit = divides_binom(ctx.phi_e, ctx.n, ctx.w, ctx.phi_factors)
    if ok is None:
        return _result(UNKNOWN, ("Phi_e", ctx.phi_e))
    if not ok:
        return _result(FAIL, ("Phi_e", ctx.phi_e), ("binom", (ctx.n, ctx.w)), ("p,v_p(Phi),v_p(binom)", wit))
    return _result(PASS)


def _r_gordon(ctx):
    f = ctx.phi_factors
    if f is None:
        return _result(UNKNOWN, ("Phi_1", ctx.phi_e))
    sq = [(p, k) for p, k in f.items() if k > 1]
    if sq:
        return _result(FAIL, ("Phi_1", ctx.phi_e), ("p", sq[0][0]), ("v_p", sq[0][1]))
    return _result(PASS)


def _r_t34(ctx):
    ps = [p for p in range(2, math.isqrt(ctx.e + 1) + 1) if is_prime(p) and (ctx.e + 1) % (p * p) == 0]
    if not ps:
        return _result(NA, ("reason", "no prime p with p^2 | e+1"))
    for p in ps:
        if ctx.phi_e % (p * p):
            return _result(FAIL, ("p", p), ("Phi_e mod p^2", ctx.phi_e % (p * p)))
    return _result(PASS)


def theorem38_lambda(w: int, d: int) -> Fraction:
    """prod_{i=0}^{d-2} (wd - (d + i(d-1))) / ((d-1)! (d-1)^(d-1) d (w-d+1))."""
    num = math.prod(w * d - (d + i * (d - 1)) for i in range(d - 1))
    return Fraction(num, math.factorial(d - 1) * (d - 1) ** (d - 1) * d * (w - d + 1))


def d3_gate(w: int) -> Fraction:
    """The d = 3 case in closed form: (w-1)(3w-5) / (8(w-2))."""
    return Fraction((w - 1) * (3 * w - 5), 8 * (w - 2))


def _lambda_check(ctx):
    """lambda = C(w+a+d, d) / Phi_1, decided prime by prime."""
    ok, wit = divides_binom(ctx.phi_e, ctx.w + ctx.a + ctx.d, ctx.d, ctx.phi_factors)
    return ok, wit


def _r_t38_lambda(ctx):
    if (r := _needs_phi(ctx)) is not None:
        return r
    if ctx.d < 2:
        return _result(NA, ("reason", "d < 2"))
    ok, wit = _lambda_check(ctx)
    if ok is None:
        return _result(UNKNOWN, ("d", ctx.d))
    if not ok:
        return _result(FAIL, ("d", ctx.d), ("p,v_p(Phi_1),v_p(binom)", wit))
    return _result(PASS, ("d", ctx.d))


# i-offsets at which the case analysis probes regularity divisibility
T40_OFFSETS = (7, 8, 10, 11, 13, 14)
T40_CASES = (3, 4, 6, 7, 9, 10)


def _r_t40(ctx):
    if (r := _needs_phi(ctx)) is not None:
        return r
    d = ctx.d
    if d not in T40_CASES:
        return _result(NA, ("d", d))
    ok, wit = _lambda_check(ctx)
    if ok is False:
        return _result(FAIL, ("d", d), ("probe", "lambda"), ("p,v_p(Phi_1),v_p(binom)", wit))
    sf = is_squarefree(ctx.w - d + 1)
    if sf is False:
        return _result(FAIL, ("d", d), ("probe", "squarefree w-d+1"), ("w-d+1", ctx.w - d + 1))
    unknown = ok is None or sf is None
    for off in T40_OFFSETS:
        i = ctx.w - off
        if not 0 <= i <= ctx.phi:
            continue
        ok, wit = divides_binom(ctx.phi_e, ctx.n - i, ctx.w - i, ctx.phi_factors)
        if ok is False:
            return _result(FAIL, ("d", d), ("probe", "regularity"), ("i", f"w-{off}"),
                           ("p,v_p(Phi_1),v_p(binom)", wit))
        unknown = unknown or ok is None
    return _result(UNKNOWN, ("d", d)) if unknown else _result(PASS, ("d", d))


def _r_l41(ctx):
    if ctx.a % 2:
        return _result(NA, ("reason", "a odd"))
    s = is_square((ctx.a + 1) ** 2 + 4 * (ctx.w - 1))
    if s is None or s % 2 == 0:
        return _result(NA, ("reason", "strength not integral"))
    alpha, beta = ctx.a // 2, (s - 1) // 2
    f1 = beta * beta - alpha * alpha + 1
    f2 = (beta + 1) ** 2 - alpha * alpha + 1
    assert f1 * f2 == ctx.phi_e
    g = math.gcd(f1, f2)
    if g != 1:
        return _result(FAIL, ("factors", (f1, f2)), ("gcd", g))
    unknown = False
    for f in (f1, f2):
        sf = is_squarefree(f)
        if sf is False:
            return _result(FAIL, ("factors", (f1, f2)), ("not squarefree", f))
        unknown = unknown or sf is None
    return _result(UNKNOWN, ("factors", (f1, f2))) if unknown else _result(PASS, ("factors", (f1, f2)))


def _r_t26(ctx):
    if (r := _needs_phi(ctx)) is not None:
        return r
    unknown = False
    for i in range(ctx.phi + 1):
        ok, wit = divides_binom(ctx.phi_e, ctx.n - i, ctx.w - i, ctx.phi_factors)
        if ok is False:
            return _result(FAIL, ("i", i), ("Phi_e", ctx.phi_e), ("p,v_p(Phi_e),v_p(binom)", wit))
        unknown = unknown or ok is None
    return _result(UNKNOWN, ("phi", ctx.phi)) if unknown else _result(PASS, ("phi", ctx.phi))


def _r_t38_product(ctx):
    if (r := _needs_phi(ctx)) is not None:
        return r
    d = ctx.d
    if d < 2:
        return _result(NA, ("reason", "d < 2"))
    unknown = False
    for s in range(ctx.w - d + 1):
        ok, wit = divides_binom(ctx.phi_e, ctx.w + ctx.a + d + s, ctx.w + ctx.a, ctx.phi_factors)
        if ok is False:
            return _result(FAIL, ("s", s), ("p,v_p(Phi_1),v_p(binom)", wit))
        unknown = unknown or ok is None
    return _result(UNKNOWN) if unknown else _result(PASS)


def _r_t47(ctx):
    if (r := _needs_phi(ctx)) is not None:
        return r
    for k in range(ctx.w, ctx.phi, -1):
        m = delta_moments_1perfect(ctx.n, ctx.w, k)
        for name, v in (("delta", m.delta), ("B", m.b), ("A", m.a)):
            if v.denominator != 1:
                return _result(FAIL, ("k", k), ("moment", name), ("value", v))
        for name, v in (("B", m.b), ("A", m.a)):
            if v < 0:
                return _result(FAIL, ("k", k), ("moment", name), ("value", v))
    return _result(PASS)


def _r_l46(ctx):
    n, w = ctx.n, ctx.w
    checks = (("aligned", w, {w: 1}), ("translate", w, {w: 0, w - 1: 1}),
              ("beta", w - 2, {w - 2: 1}), ("gamma", w + 2, {w: 1}))
    for name, k, boundary in checks:
        if not 0 <= k <= n:
            continue
        sol = config_recurrence_solve(n, w, k, boundary, strict=False)
        if not sol.passed:
            return _result(FAIL, ("partition", name), ("k", k), ("witness", sol.witness()))
    return _result(PASS)


def _r_p49(ctx):
    if ctx.a != 0:
        return _result(NA, ("reason", "n != 2w"))
    if (r := _needs_phi(ctx)) is not None:
        return r
    jmax = ctx.w - ctx.phi - 1  # 2 <= j < w - phi
    for leader in (1, 2):
        m = [Fraction(1), Fraction(ctx.w - 1 if leader == 1 else ctx.w)]
        for j in range(2, jmax + 1):
            m.append(-(F2(ctx.w, j) * m[-2] + G2(ctx.w, j) * m[-1]) / ((j - 1) ** 2 * j * j))
            if m[-1].denominator != 1:
                return _result(FAIL, ("leader", leader), ("j", j), ("value", m[-1]))
    return _result(PASS)


def _e1(ctx):
    return ctx.e == 1


def _e2_2w(ctx):
    return ctx.e == 2 and ctx.a == 0


def _any(ctx):
    return True


@dataclass(frozen=True)
class Rule:
    id: str
    applies: Callable = field(repr=False)
    check: Callable = field(repr=False)
    source: str = ""

    def evaluate(self, ctx) -> Verdict:
        if not self.applies(ctx):
            return Verdict(self.id, NA)
        status, witness = self.check(ctx)
        return Verdict(self.id, status, witness)


# cheapest first; ids are stable
RULES: tuple[Rule, ...] = (
    Rule("C15.size", _any, _r_size, "w >= 2e+1 and n-w >= 2e+1"),
    Rule("T8.hammond", _any, _r_hammond, "no codes for n in {2w-2, 2w-1, 2w+1, 2w+2}"),
    Rule("C18.mod", _any, _r_mod_e1, "n-w = w = e (mod e+1)"),
    Rule("T24.steiner", _any, _r_t24, "(e+1)(e+2) | n-2w with parity cases"),
    Rule("L39.mod12", _e1, _r_mod12, "w = n-w = 1 or 7 (mod 12)"),
    Rule("T29.mod4", _e1, _r_mod4, "1 + w(n-w) != 0 (mod 4)"),
    Rule("T16.steiner", _any, _r_t16, "S(e+1, 2e+1, w) and S(e+1, 2e+1, n-w)"),
    Rule("T17.steiner", _any, _r_t17, "S(2, e+2, w-e+1) and S(2, e+2, n-w-e+1)"),
    Rule("C23.steiner", _any, _r_c23, "S(2, e+2, w+2) when w <= n-w"),
    Rule("T22.steiner", _any, _r_t22, "S(2, e+2, n-w+2) when n < (w-1)(2e+1)/e"),
    Rule("STR.integral", _any, _r_strength, "the strength must be an integer"),
    Rule("T38.mod12", _e1, _r_t38_mod12, "w-d = 0, 1, 4 or 9 (mod 12)"),
    Rule("T50.pell", _e2_2w, _r_pell, "Pell conditions for 2-perfect codes in J(2w,w)"),
    Rule("C25.prime", _any, _r_c25, "n-2w is not p^i nor pq with q < p, p != 2q-1"),
    Rule("SP.divides", _any, _r_sphere_packing, "Phi_e | C(n,w)"),
    Rule("G.squarefree", _e1, _r_gordon, "Phi_1 squarefree"),
    Rule("T34.p2", _any, _r_t34, "p^2 | Phi_e when p^2 | e+1"),
    Rule("T38.lambda", _e1, _r_t38_lambda, "lambda integral"),
    Rule("T40.case", _e1, _r_t40, "small-d case analysis"),
    Rule("L41.factors", _e1, _r_l41, "Phi_1 factors coprime and squarefree"),
    Rule("T26.regular", _any, _r_t26, "Phi_e | C(n-i, w-i) for i <= phi"),
    Rule("T38.product", _e1, _r_t38_product, "Phi_1 | C(w+a+d+s, w+a) for s <= w-d"),
    Rule("T47.moment", _e1, _r_t47, "binomial moments integral and nonnegative for k > phi"),
    Rule("L46.config", _e1, _r_l46, "configuration counts integral, nonnegative, consistent"),
    Rule("P49.recursion", _e2_2w, _r_p49, "both translate moment sequences integral"),
)
RULE_IDS = tuple(r.id for r in RULES)
_BY_ID = {r.id: r for r in RULES}


def _select(rules: Optional[Iterable[str]]) -> tuple[Rule, ...]:
    if rules is None:
        return RULES
    wanted = set(rules)
    unknown = wanted - set(_BY_ID)
    if unknown:
        raise ValueError(f"unknown rule ids: {sorted(unknown)}")
    return tuple(r for r in RULES if r.id in wanted)


def run_rules(params: JohnsonParams, rules: Optional[Iterable[str]] = None, first_fail: bool = False) -> Report:
    """Evaluate the catalog (or a subset) at one point.

    The point is complemented into n >= 2w first.  With ``first_fail`` the
    evaluation stops after the first failing rule.
    """
    if classify_trivial(params) is not None:
        return Report(params, (), classify_trivial(params))
    ctx = _Point(params.canonical())
    out = []
    for rule in _select(rules):
        v = rule.evaluate(ctx)
        out.append(v)
        if first_fail and v.status == FAIL:
            break
    return Report(params, tuple(out))


# -- doubly constant weight ------------------------------------------------------

def doubly_checks(p: DoublyParams) -> Report:
    tag = classify_trivial(p)
    if tag is not None:
        return Report(p, (), tag)
    e = p.e
    phi = sphere_size_doubly(p.n1, p.w1, p.n2, p.w2, e)
    space = binom(p.n1, p.w1) * binom(p.n2, p.w2)
    out = []
    if space % phi:
        out.append(Verdict("E9.divides", FAIL, (("Phi_e", phi), ("space", space), ("remainder", space % phi))))
    else:
        out.append(Verdict("E9.divides", PASS, (("Phi_e", phi), ("quotient", space // phi))))
    bounds = (("T60.n1", p.n1, (2 * e + 1) * (p.w1 - 1) + p.w2),
              ("T60.n2", p.n2, (2 * e + 1) * (p.w2 - 1) + p.w1))
    for rid, nn, num in bounds:
        if e == 0:
            out.append(Verdict(rid, NA))
            continue
        bound = Fraction(num, e)
        status = PASS if nn <= bound else FAIL
        out.append(Verdict(rid, status, (("n", nn), ("bound", bound))))
    ineqs = (("C58.w1+w2", p.w1 + p.w2), ("C58.complement", p.n1 + p.n2 - p.w1 - p.w2),
             ("C58.first-block", p.n1 - p.w1 + p.w2), ("C58.second-block", p.w1 + p.n2 - p.w2))
    for rid, lhs in ineqs:
        status = PASS if lhs >= 2 * e + 1 else FAIL
        out.append(Verdict(rid, status, (("lhs", lhs), ("2e+1", 2 * e + 1))))
    return Report(p, tuple(out))


def catalan_family(k: int) -> DoublyParams:
    """(w1, n1, w2, n2) = (2k, 4k+1, 2k, 4k+2), whose sphere size divides the space."""
    if k < 1:
        raise ValueError("k >= 1")
    p = DoublyParams(2 * k, 4 * k + 1, 2 * k, 4 * k + 2, 1)
    phi = (2 * k + 1) * (4 * k + 1)
    assert phi == sphere_size_doubly(p.n1, p.w1, p.n2, p.w2, 1)
    assert binom(4 * k + 1, 2 * k) * binom(4 * k + 2, 2 * k) % phi == 0
    return p


# -- residue tables for 1-perfect codes ------------------------------------------

TABLE_RESIDUES = {1: (1, 13, 25, 37, 49), 7: (7, 19, 31, 43, 55)}


def _vp(x: int, p: int) -> int:
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def _eval_mod(terms: dict, w: int, a: int, m: int) -> int:
    return sum(c * pow(w, i, m) * pow(a, j, m) for (i, j), c in terms.items()) % m


@dataclass(frozen=True)
class ResidueCell:
    w: int
    v: int
    dead: bool
    killed_by: tuple[int, ...]
    # surviving (k mod 5, y mod 5) for w = 60k + w, w+a = 60y + v
    ky_mod5: tuple[tuple[int, int], ...]
    # surviving residues of a mod 8
    a_mod8: tuple[int, ...]

    @property
    def mark(self) -> str:
        return "-" if self.dead else ""


@dataclass(frozen=True)
class ResidueTables:
    tables: dict
    primes: dict

    def cell(self, w: int, v: int) -> ResidueCell:
        return self.tables[1 if w % 12 == 1 else 7][(w, v)]

    def dashes(self, which: int) -> set[tuple[int, int]]:
        return {k for k, c in self.tables[which].items() if c.dead}

    def refinements(self) -> list[ResidueCell]:
        """Surviving cells with a nontrivial mod-5 or mod-8 restriction."""
        out = []
        for which in (1, 7):
            for c in self.tables[which].values():
                if not c.dead and (len(c.ky_mod5) < 25 or len(c.a_mod8) < 2):
                    out.append(c)
        return out

    def to_tsv(self) -> str:
        lines = []
        for which in (1, 7):
            rows = TABLE_RESIDUES[which]
            lines.append(f"# w = w+a = {which} (mod 12); '-' means excluded")
            lines.append("\t".join(["w\\w+a"] + [str(v) for v in rows]))
            for w in rows:
                lines.append("\t".join([str(w)] + [self.tables[which][(w, v)].mark for v in rows]))
        lines.append("# refinements, w = 60k + i and w+a = 60y + j")
        lines.append("\t".join(["i", "j", "(k,y) mod 5", "a mod 24"]))
        for c in self.refinements():
            ky = " ".join(f"({k},{y})" for k, y in c.ky_mod5)
            amod = " ".join(str(_a24(r)) for r in c.a_mod8)
            lines.append("\t".join([str(c.w), str(c.v), ky, amod]))
        return "\n".join(lines) + "\n"


def _a24(r8: int) -> int:
    # a = 0 (mod 12) in every cell, so a mod 8 (0 or 4) fixes a mod 24
    return 0 if r8 == 0 else 12


def _lifts(r: int, base: int, pe: int) -> range:
    """Residues mod pe that reduce to r mod base (base | pe)."""
    return range(r % base, pe, base)


def residue_tables_1perfect() -> ResidueTables:
    """Integrality of the four k = w-5 / w-3 quantities over all lifts of each mod-60 cell.

    Each prime in the denominators is scanned on its own (2-adic mod 64,
    3-adic mod 9, 5-adic mod 25); by the Chinese remainder theorem a cell
    survives iff every prime has a passing lift.
    """
    exprs = [p.integer_numerator() for p in table_expressions().values()]
    dens = [d for _, d in exprs]
    primes = sorted({p for d in dens for p in factorize(d)})
    pmax = {p: max(_vp(d, p) for d in dens) for p in primes}
    base_of = {p: p ** _vp(60, p) for p in primes}
    tables = {}
    for which, rows in TABLE_RESIDUES.items():
        t = {}
        for w0 in rows:
            for v0 in rows:
                passing = {}
                for p in primes:
                    pe, base = p ** pmax[p], base_of[p]
                    ok = []
                    for wl in _lifts(w0, base, pe):
                        for vl in _lifts(v0, base, pe):
                            if all(_eval_mod(terms, wl, vl - wl, p ** _vp(d, p)) == 0 for terms, d in exprs):
                                ok.append((wl, vl))
                    passing[p] = ok
                killed = tuple(p for p in primes if not passing[p])
                ky = sorted({(k, y) for k in range(5) for y in range(5)
                             for wl, vl in passing.get(5, [])
                             if (60 * k + w0) % 25 == wl and (60 * y + v0) % 25 == vl})
                a8 = sorted({(vl - wl) % 8 for wl, vl in passing.get(2, [])})
                t[(w0, v0)] = ResidueCell(w0, v0, bool(killed), killed, tuple(ky), tuple(a8))
        tables[which] = t
    return ResidueTables(tables, pmax)


# -- residue classes for 2-perfect codes in J(2w, w) -----------------------------

# imported necessary condition on w (mod 60) that the moment analysis refines
PRIOR_2PERFECT_MOD60 = (2, 26, 50)


@dataclass(frozen=True)
class ResidueClasses:
    mod60: tuple[int, ...]
    mod420: tuple[int, ...]
    eliminated: dict


def _alive_2perfect(r: int, mod: int, polys, primes) -> Optional[int]:
    """None if every prime has a passing lift, else the first prime with none."""
    for p in primes:
        e = max(_vp(d, p) for _, d in polys)
        pe, base = p ** e, p ** _vp(mod, p)
        found = False
        for wl in _lifts(r, base, pe):
            if all(sum(c * pow(wl, i, p ** _vp(d, p)) for i, c in enumerate(cs)) % p ** _vp(d, p) == 0
                   for cs, d in polys):
                found = True
                break
        if not found:
            return p
    return None


def residue_classes_2perfect(js: Sequence[int] = tuple(range(2, 8)),
                             prior: Sequence[int] = PRIOR_2PERFECT_MOD60) -> ResidueClasses:
    """Residues of w (mod 60, then mod 420) where every moment value is integral.

    Both translate leaders are required to give integers for every j in ``js``.
    """
    polys = [delta_2perfect_poly(j, leader).integer_numerator() for j in js for leader in (1, 2)]
    eliminated = {}
    m60 = []
    for r in prior:
        bad = _alive_2perfect(r, 60, polys, (2, 3, 5))
        if bad is None:
            m60.append(r)
        else:
            eliminated[(60, r)] = bad
    m420 = []
    for r60 in m60:
        for r in range(r60, 420, 60):
            bad = _alive_2perfect(r, 420, polys, (2, 3, 5, 7))
            if bad is None:
                m420.append(r)
            else:
                eliminated[(420, r)] = bad
    return ResidueClasses(tuple(m60), tuple(m420), eliminated)


# -- range sieve -----------------------------------------------------------------

def _e1_candidates(w: int, a_min: int, a_max: Optional[int]) -> list[int]:
    """Every a with (a+1)^2 + 4(w-1) a square, i.e. integral strength."""
    m = 4 * (w - 1)
    out = set()
    for u in range(1, math.isqrt(m) + 1):
        if m % u:
            continue
        v = m // u
        if (v - u) % 2:
            continue
        a = (v - u) // 2 - 1
        if a >= a_min and (a_max is None or a <= a_max):
            out.add(a)
    return sorted(out)


def _points(e: int, w_min: int, w_max: int, a_min: int, a_max: Optional[int],
            n_eq_2w: bool, survivors_only: bool) -> Iterator[tuple[int, int]]:
    if n_eq_2w:
        if survivors_only and e == 2:
            # the strength needs 2w^2 - 6w + 5 to be a square
            for _, x, _ in pell_odd_family():
                w = (x + 3) // 2
                if w > w_max:
                    return
                if w >= w_min:
                    yield w, 0
            return
        for w in range(w_min, w_max + 1):
            yield w, 0
        return
    for w in range(w_min, w_max + 1):
        top = 2 * w if a_max is None else a_max
        if survivors_only and e == 1 and w >= 2:
            for a in _e1_candidates(w, a_min, None if a_max is None else a_max):
                yield w, a
        else:
            for a in range(a_min, top + 1):
                yield w, a


def _eval_chunk(args) -> list[Report]:
    e, pts, rules, first_fail, survivors_only = args
    out = []
    for w, a in pts:
        # a survivor has no failing rule, so stopping early loses nothing
        r = run_rules(JohnsonParams(2 * w + a, w, e), rules, first_fail or survivors_only)
        if survivors_only and not r.survives:
            continue
        out.append(r)
    return out


def sieve_range(e: int, w_min: int = 1, w_max: int = 1, a_min: int = 0, a_max: Optional[int] = None,
                rules: Optional[Iterable[str]] = None, n_eq_2w: bool = False, survivors_only: bool = False,
                first_fail: bool = False, resume_after: Optional[tuple[int, int]] = None,
                chunk: int = 256, threads: Optional[int] = None) -> Iterator[Report]:
    """Reports for n = 2w + a in lexicographic (w, a) order.

    ``a_max`` defaults to 2w.  With ``survivors_only`` only surviving points are
    yielded, and for e = 1 (and e = 2 with n = 2w) points whose strength is not
    integral are skipped without evaluation; that shortcut needs STR.integral
    among the selected rules.  ``resume_after`` skips every point up to and
    including the given (w, a).  JS_THREADS (or ``threads``) sets the number of
    worker processes; output order never depends on it.
    """
    rule_list = None if rules is None else tuple(r.id for r in _select(rules))
    skip_ok = rule_list is None or "STR.integral" in rule_list
    pts = _points(e, w_min, w_max, a_min, a_max, n_eq_2w, survivors_only and skip_ok)
    if resume_after is not None:
        pts = (p for p in pts if p > tuple(resume_after))
    if threads is None:
        threads = int(os.environ.get("JS_THREADS", "1") or 1)
    jobs = iter(lambda: list(islice(pts, chunk)), [])
    args = ((e, c, rule_list, first_fail, survivors_only) for c in jobs)
    if threads <= 1:
        for a in args:
            yield from _eval_chunk(a)
        return
    with ProcessPoolExecutor(max_workers=threads) as ex:
        # map keeps submission order, so the output stays canonical
        for batch in ex.map(_eval_chunk, args):
            yield from batch
