"""Block designs, Steiner systems and doubly Steiner systems."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from .exactmath import binom
from .johnson import Code, DoublyCode, EnumerationGuardError, Word, _mask

# The seven lines of the Fano plane, 0-based, in the order they are usually listed.
FIGURE1 = ((0, 1, 3), (1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 0), (5, 6, 1), (6, 0, 2))


class NotSteinerError(ValueError):
    pass


@dataclass(frozen=True)
class BlockDesign:
    """n points and a list of distinct equal-size blocks (order preserved)."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(b) for b in self.blocks)
        normalized = [tuple(sorted(b)) for b in blocks]
        if len(set(normalized)) != len(normalized):
            raise ValueError("duplicate blocks")
        sizes = {len(b) for b in blocks}
        if len(sizes) > 1:
            raise ValueError(f"blocks of different sizes {sorted(sizes)}")
        for b in normalized:
            if len(set(b)) != len(b):
                raise ValueError(f"repeated point in block {b}")
            if b and (b[0] < 0 or b[-1] >= self.n):
                raise ValueError(f"block {b} out of range for n={self.n}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def w(self) -> int:
        return len(self.blocks[0]) if self.blocks else 0

    @property
    def b(self) -> int:
        return len(self.blocks)

    @classmethod
    def from_code(cls, code: Code) -> "BlockDesign":
        return cls(code.n, tuple(c.support for c in code))

    def to_code(self) -> Code:
        return Code.of(self.n, self.w, self.blocks)


def figure1() -> BlockDesign:
    return BlockDesign(7, FIGURE1)


def verify_design(d: BlockDesign, t: int, guard: int = 10**7) -> Optional[int]:
    """lambda if every t-subset of points lies in exactly lambda blocks, else None.

    t = 0 is the degenerate case where the empty set lies in every block.
    """
    if t < 0 or t > d.w:
        raise ValueError(f"need 0 <= t <= w={d.w}")
    if binom(d.n, t) > guard:
        raise EnumerationGuardError(f"{binom(d.n, t)} t-subsets exceed guard {guard}")
    if t == 0:
        return d.b
    masks = [_mask(b) for b in d.blocks]
    lam = None
    for s in combinations(range(d.n), t):
        sm = _mask(s)
        count = sum(1 for m in masks if m & sm == sm)
        if lam is None:
            lam = count
        elif count != lam:
            return None
    return lam


def code_strength(d: BlockDesign) -> int:
    """Largest t for which the blocks form a t-design.

    A single block with w < n covers its own points but no outside point, so
    it is only a 0-design; the full space (w = n) is a w-design.
    """
    best = 0
    for t in range(1, d.w + 1):
        if verify_design(d, t) is None:
            break
        best = t
    return best


@dataclass(frozen=True)
class Condition:
    name: str
    passed: bool
    value: object
    detail: str = ""


@dataclass(frozen=True)
class SteinerVerdict:
    t: int
    w: int
    n: int
    conditions: tuple[Condition, ...]
    blocks: Optional[int]

    @property
    def admissible(self) -> bool:
        return all(c.passed for c in self.conditions)

    def first_failure(self) -> Optional[Condition]:
        return next((c for c in self.conditions if not c.passed), None)


def divisibility_ratios(t: int, w: int, n: int) -> list[Fraction]:
    """binom(n-i, t-i) / binom(w-i, t-i) for i = 0..t."""
    return [Fraction(binom(n - i, t - i), binom(w - i, t - i)) for i in range(t + 1)]


def steiner_conditions(t: int, w: int, n: int) -> SteinerVerdict:
    """Necessary conditions for an S(t, w, n): integral ratios and the Tits bound."""
    if not 0 <= t <= w <= n:
        raise ValueError("need 0 <= t <= w <= n")
    conds = []
    for i, r in enumerate(divisibility_ratios(t, w, n)):
        conds.append(Condition(f"ratio[{i}]", r.denominator == 1, r,
                               f"binom({n - i},{t - i})/binom({w - i},{t - i})"))
    if w < n and t >= 1:
        bound = (t + 1) * (w - t + 1)
        conds.append(Condition("tits", n >= bound, bound, f"n >= (t+1)(w-t+1) = {bound}"))
    blocks = None
    if all(c.passed for c in conds):
        blocks = binom(n, t) // binom(w, t)
    return SteinerVerdict(t, w, n, tuple(conds), blocks)


def steiner_admissible(t: int, w: int, n: int) -> bool:
    """Divisibility part only; out-of-range parameters are treated as not applicable (True)."""
    if not 0 <= t <= w <= n:
        return True
    return all(r.denominator == 1 for r in divisibility_ratios(t, w, n))


def derived_design(d: BlockDesign, point: int, t: Optional[int] = None) -> BlockDesign:
    """Blocks through ``point`` with the point removed, points renumbered to 0..n-2."""
    if t is None:
        t = code_strength(d)
    if t < 1 or verify_design(d, t) != 1:
        raise NotSteinerError(f"not a Steiner system with t={t} >= 1")
    if not 0 <= point < d.n:
        raise ValueError("point out of range")
    relabel = {p: (p if p < point else p - 1) for p in range(d.n) if p != point}
    blocks = tuple(tuple(sorted(relabel[p] for p in b if p != point)) for b in d.blocks if point in b)
    return BlockDesign(d.n - 1, blocks)


def incidence_matrix(d: BlockDesign) -> np.ndarray:
    """b x n 0/1 matrix, rows in block order."""
    a = np.zeros((d.b, d.n), dtype=np.int64)
    for i, blk in enumerate(d.blocks):
        a[i, list(blk)] = 1
    return a


def lambda_s(t: int, w: int, n: int, lam: int, s: int) -> Fraction:
    """Blocks through a fixed s-subset of a t-(n,w,lam) design."""
    return lam * Fraction(binom(n - s, t - s), binom(w - s, t - s))


# -- doubly Steiner systems -------------------------------------------------

@dataclass(frozen=True)
class DoublySteinerParams:
    t1: int
    t2: int
    w1: int
    w2: int
    n1: int
    n2: int

    def __post_init__(self):
        if not (0 <= self.t1 <= self.w1 <= self.n1 and 0 <= self.t2 <= self.w2 <= self.n2):
            raise ValueError("need t1 <= w1 <= n1 and t2 <= w2 <= n2")


@dataclass(frozen=True)
class DoublySteinerBounds:
    n1_candidates: tuple[int, ...]
    n2_candidates: tuple[int, ...]
    n1_min: Optional[int]
    n2_min: Optional[int]
    simplified: Optional[tuple[int, int]]
    label: str


def doubly_steiner_bounds(p: DoublySteinerParams) -> DoublySteinerBounds:
    """Lower bounds on n1 and n2 from the two anticode constructions per side.

    Side 1: shrinking t1 by one gives w1(t2+1) - t1 t2 when t2 < w2, and the
    one-block Tits-style bound (w1-t1+1)(t1+1) when t1 < w1.  Side 2 likewise.
    """
    t1, t2, w1, w2 = p.t1, p.t2, p.w1, p.w2
    c1, c2 = [], []
    if t2 < w2:
        c1.append(w1 * (t2 + 1) - t1 * t2)
    if t1 < w1:
        c1.append((w1 - t1 + 1) * (t1 + 1))
        c2.append(w2 * (t1 + 1) - t1 * t2)
    if t2 < w2:
        c2.append((w2 - t2 + 1) * (t2 + 1))
    simplified = None
    if t1 == w1 and t2 == w2:
        label = "vacuous"
    elif t2 > t1 and t1 < w1:
        label = "theorem"
        # the proof's own simplification; the headline statement prints (t1+1)w1 - t1 t2
        if t2 < w2:
            simplified = (w1 * (t2 + 1) - t1 * t2, (t2 + 1) * (w2 - t2 + 1))
    elif t1 > t2 and t2 < w2:
        label = "by symmetry"
    else:
        label = "hypothesis unmet"
    return DoublySteinerBounds(tuple(c1), tuple(c2), max(c1) if c1 else None, max(c2) if c2 else None,
                           simplified, label)


@dataclass(frozen=True)
class DoublySteinerVerdict:
    params: DoublySteinerParams
    size: Fraction
    size_integral: bool
    bounds: DoublySteinerBounds
    n1_ok: bool
    n2_ok: bool
    cover_ok: Optional[bool] = None
    diameter_perfect_ok: Optional[bool] = None
    witness: Optional[tuple[int, ...]] = None

    @property
    def passed(self) -> bool:
        checks = [self.size_integral, self.n1_ok, self.n2_ok]
        if self.cover_ok is not None:
            checks += [self.cover_ok, bool(self.diameter_perfect_ok)]
        return all(checks)


def doubly_steiner_check(p: DoublySteinerParams, code: Optional[DoublyCode] = None,
                         guard: int = 10**6) -> DoublySteinerVerdict:
    size = Fraction(binom(p.n1, p.t1) * binom(p.n2, p.t2), binom(p.w1, p.t1) * binom(p.w2, p.t2))
    bounds = doubly_steiner_bounds(p)
    n1_ok = bounds.n1_min is None or p.n1 >= bounds.n1_min
    n2_ok = bounds.n2_min is None or p.n2 >= bounds.n2_min
    cover_ok = dp_ok = None
    witness = None
    if code is not None:
        if (code.n1, code.w1, code.n2, code.w2) != (p.n1, p.w1, p.n2, p.w2):
            raise ValueError("code does not match the doubly Steiner parameters")
        configs = binom(p.n1, p.t1) * binom(p.n2, p.t2)
        if configs * len(code) > guard:
            raise EnumerationGuardError(f"cover check needs {configs * len(code)} tests, guard is {guard}")
        masks = [c.mask for c in code]
        cover_ok = True
        for a in combinations(range(p.n1), p.t1):
            for b in combinations(range(p.n1, p.n1 + p.n2), p.t2):
                m = _mask(a + b)
                if sum(1 for c in masks if c & m == m) != 1:
                    cover_ok = False
                    witness = a + b
                    break
            if not cover_ok:
                break
        dp_ok = (len(code) * binom(p.n1 - p.t1, p.w1 - p.t1) * binom(p.n2 - p.t2, p.w2 - p.t2)
                 == binom(p.n1, p.w1) * binom(p.n2, p.w2))
    return DoublySteinerVerdict(p, size, size.denominator == 1, bounds, n1_ok, n2_ok, cover_ok, dp_ok, witness)


# -- anticode comparison for the Tits bound -----------------------------------

def anticode_inequality(n: int, w: int, t: int) -> bool:
    """Whether the S-intersecting anticode is no larger than the fixed-t-subset one."""
    return binom(n - t - 2, w - t - 2) + (t + 2) * binom(n - t - 2, w - t - 1) <= binom(n - t, w - t)


def tits_bound_holds(n: int, w: int, t: int) -> bool:
    return n >= (t + 1) * (w - t + 1)


def parse_design_text(text: str) -> BlockDesign:
    """Design files share the code file format."""
    from .johnson import parse_code_text

    code = parse_code_text(text)
    if not isinstance(code, Code):
        raise ValueError("a block design needs a single-block header")
    return BlockDesign.from_code(code)


def min_h_distance(d: BlockDesign) -> Optional[int]:
    words = [Word.of(d.n, b) for b in d.blocks]
    best = None
    for u, v in combinations(words, 2):
        h = (u.mask ^ v.mask).bit_count()
        best = h if best is None else min(best, h)
    return best
