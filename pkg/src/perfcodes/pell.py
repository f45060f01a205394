"""Solutions of x^2 - 2y^2 = -1 and the 2-perfect J(2w,w) exclusion scan.

Everything stays in integers: the step (x, y) -> (3x+4y, 2x+3y) walks the odd
exponents k = 1, 3, 5, ... and its square (17x+24y, 12x+17y) walks k = 4t+1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .exactmath import binom, is_square

# the threshold below which every candidate is excluded
N_LIMIT = 25 * 10**14


@dataclass(frozen=True)
class PellSolution:
    t: int
    k: int
    x: int
    y: int

    def __post_init__(self):
        if self.x * self.x - 2 * self.y * self.y != -1:
            raise ValueError(f"({self.x}, {self.y}) does not solve x^2 - 2y^2 = -1")

    @property
    def w(self) -> int:
        return (self.x + 3) // 2

    @property
    def n(self) -> int:
        return 2 * self.w

    @property
    def c2(self) -> int:
        return 1 + 4 * (self.x + self.y)

    @property
    def d2(self) -> int:
        return 1 + 4 * (self.x - self.y)


def pell_family(t_max: int) -> list[PellSolution]:
    """The k = 4t+1 solutions for t = 0..t_max."""
    out = []
    x, y = 1, 1
    for t in range(t_max + 1):
        out.append(PellSolution(t, 4 * t + 1, x, y))
        x, y = 17 * x + 24 * y, 12 * x + 17 * y
    return out


def pell_odd_family() -> Iterator[tuple[int, int, int]]:
    """All (k, x, y) with k odd, in increasing order; infinite."""
    x, y, k = 1, 1, 1
    while True:
        yield k, x, y
        x, y, k = 3 * x + 4 * y, 2 * x + 3 * y, k + 2


def pell_w_values(w_max: int) -> list[int]:
    """Every w <= w_max with 2w^2 - 6w + 5 a perfect square, i.e. x = 2w - 3 solves the equation."""
    out = []
    for _, x, _ in pell_odd_family():
        w = (x + 3) // 2
        if w > w_max:
            break
        out.append(w)
    return out


# -- closed forms by binomial expansion ----------------------------------------

def x_binomial(m: int) -> int:
    """x for k = 2m+1 as sum_j C(2m+1, 2j) 2^j."""
    return sum(binom(2 * m + 1, 2 * j) * 2**j for j in range(m + 1))


def c2_binomial(t: int) -> int:
    return 1 + sum(binom(4 * t + 2, 2 * j + 1) * 2 ** (j + 2) for j in range(2 * t + 1))


def d2_binomial(t: int) -> int:
    return 1 + sum(binom(4 * t, 2 * j + 1) * 2 ** (j + 2) for j in range(2 * t))


def mod3_binomial_sum(m: int) -> int:
    """sum_{j odd} C(2m+1,2j) - sum_{j even, j >= 1} C(2m+1,2j).

    Since 2^j is 2 or 1 mod 3 by parity of j, x = 1 + (even part) + 2 (odd part)
    mod 3, so x = 1 (mod 3) exactly when this difference is 0 mod 3.
    """
    odd = sum(binom(2 * m + 1, 2 * j) for j in range(1, m + 1) if j % 2 == 1)
    even = sum(binom(2 * m + 1, 2 * j) for j in range(1, m + 1) if j % 2 == 0)
    return odd - even


# -- the per-solution report ----------------------------------------------------

@dataclass(frozen=True)
class ConditionResult:
    name: str
    passed: bool
    witness: tuple


@dataclass(frozen=True)
class Theorem50Report:
    solution: PellSolution
    conditions: tuple[ConditionResult, ...]

    def get(self, name: str) -> ConditionResult:
        return next(c for c in self.conditions if c.name == name)

    @property
    def square_branch_ok(self) -> bool:
        """At least one of the two strength branches is integral."""
        return self.get("c_square").passed or self.get("d_square").passed

    @property
    def excluded(self) -> bool:
        hard = ("w_formula", "mod3", "mod12", "size")
        return any(not self.get(n).passed for n in hard) or not self.square_branch_ok

    def reasons(self) -> list[str]:
        out = [c.name for c in self.conditions if not c.passed and c.name not in ("c_square", "d_square")]
        if not self.square_branch_ok:
            out.append("c_square+d_square")
        return out


def theorem50_report(s: PellSolution, e: int = 2) -> Theorem50Report:
    """Evaluate every condition, even after one has failed."""
    m = 2 * s.t
    conds = [
        # w = ((1+r2)^k + (1-r2)^k + 6)/4 = (2x + 6)/4
        ConditionResult("w_formula", (2 * s.x + 6) % 4 == 0 and (2 * s.x + 6) // 4 == s.w, (s.x, s.w)),
        ConditionResult("mod3", mod3_binomial_sum(m) % 3 == 0, (mod3_binomial_sum(m), s.x % 3)),
    ]
    c = is_square(s.c2)
    d = is_square(s.d2)
    conds.append(ConditionResult("c_square", c is not None, (s.c2, c)))
    conds.append(ConditionResult("d_square", d is not None, (s.d2, d)))
    conds.append(ConditionResult("mod12", s.w % 12 == 2, (s.w % 12, s.x % 24)))
    conds.append(ConditionResult("size", s.w >= 2 * e + 1, (s.w, 2 * e + 1)))
    return Theorem50Report(s, tuple(conds))


@dataclass(frozen=True)
class ExclusionSummary:
    n_limit: int
    reports: tuple[Theorem50Report, ...]

    @property
    def survivors(self) -> list[Theorem50Report]:
        return [r for r in self.reports if not r.excluded]

    @property
    def all_excluded(self) -> bool:
        return not self.survivors


def exclusion_scan(n_limit: int = N_LIMIT) -> ExclusionSummary:
    """Reports for every k = 4t+1 solution with n = 2w < n_limit."""
    reports = []
    x, y, t = 1, 1, 0
    while True:
        s = PellSolution(t, 4 * t + 1, x, y)
        if s.n >= n_limit:
            break
        reports.append(theorem50_report(s))
        x, y, t = 17 * x + 24 * y, 12 * x + 17 * y, t + 1
    return ExclusionSummary(n_limit, tuple(reports))


TABLE3_HEADER = ("t", "1+4(x-y)", "1+4(x+y)", "x", "w")


def table3_rows(n_limit: int = N_LIMIT) -> list[tuple[int, int, int, int, int]]:
    return [(r.solution.t, r.solution.d2, r.solution.c2, r.solution.x, r.solution.w)
            for r in exclusion_scan(n_limit).reports]


def table3_tsv(n_limit: int = N_LIMIT) -> str:
    lines = ["\t".join(TABLE3_HEADER)]
    lines += ["\t".join(str(v) for v in row) for row in table3_rows(n_limit)]
    return "\n".join(lines) + "\n"


def pell_index(w: int) -> Optional[int]:
    """t with w = (x_t + 3)/2 in the k = 4t+1 family, else None."""
    x = 2 * w - 3
    if x < 1 or is_square(2 * w * w - 6 * w + 5) is None:
        return None
    xx, yy, t = 1, 1, 0
    while xx < x:
        xx, yy, t = 17 * xx + 24 * yy, 12 * xx + 17 * yy, t + 1
    return t if xx == x else None
