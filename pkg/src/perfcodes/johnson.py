"""Johnson and doubly constant weight spaces, plus brute-force oracles.

Words are w-subsets of {0..n-1}; internally a word is also a bitmask so
intersections are a single ``&``.  Everything that enumerates a space takes
an explicit guard and raises instead of silently truncating.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence, Union

from .exactmath import binom

MAX_SPACE = 10**7
MAX_N = 40


class EnumerationGuardError(ValueError):
    """Raised when an exhaustive check would exceed its configured guard."""


class CodeFileError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _indices(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True, order=True)
class Word:
    """A w-subset of {0..n-1}."""

    n: int
    support: tuple[int, ...]
    mask: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        s = tuple(self.support)
        if any(b <= a for a, b in zip(s, s[1:])):
            raise ValueError(f"support must be strictly increasing: {s}")
        if s and (s[0] < 0 or s[-1] >= self.n):
            raise ValueError(f"support {s} out of range for n={self.n}")
        object.__setattr__(self, "support", s)
        object.__setattr__(self, "mask", _mask(s))

    @classmethod
    def of(cls, n: int, indices: Iterable[int]) -> "Word":
        return cls(n, tuple(sorted(indices)))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "Word":
        return cls(n, _indices(mask))

    @property
    def w(self) -> int:
        return len(self.support)

    def __str__(self) -> str:
        return " ".join(map(str, self.support))


@dataclass(frozen=True)
class Code:
    n: int
    w: int
    words: tuple[Word, ...]

    def __post_init__(self):
        ws = tuple(sorted(self.words))
        if len(set(ws)) != len(ws):
            raise ValueError("duplicate codewords")
        for c in ws:
            if c.n != self.n or c.w != self.w:
                raise ValueError(f"word {c.support} does not match n={self.n}, w={self.w}")
        object.__setattr__(self, "words", ws)

    @classmethod
    def of(cls, n: int, w: int, supports: Iterable[Iterable[int]]) -> "Code":
        return cls(n, w, tuple(Word.of(n, s) for s in supports))

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)


@dataclass(frozen=True, order=True)
class DoublyWord:
    """w1 ones among the first n1 coordinates and w2 among the last n2."""

    n1: int
    n2: int
    support: tuple[int, ...]
    mask: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        s = tuple(self.support)
        if any(b <= a for a, b in zip(s, s[1:])):
            raise ValueError(f"support must be strictly increasing: {s}")
        if s and (s[0] < 0 or s[-1] >= self.n1 + self.n2):
            raise ValueError(f"support {s} out of range")
        object.__setattr__(self, "support", s)
        object.__setattr__(self, "mask", _mask(s))

    @classmethod
    def of(cls, n1: int, n2: int, indices: Iterable[int]) -> "DoublyWord":
        return cls(n1, n2, tuple(sorted(indices)))

    @classmethod
    def from_blocks(cls, n1: int, n2: int, first: Iterable[int], second: Iterable[int]) -> "DoublyWord":
        """Build from block-local indices (second block counted from 0)."""
        return cls.of(n1, n2, list(first) + [n1 + j for j in second])

    @property
    def w1(self) -> int:
        return sum(1 for i in self.support if i < self.n1)

    @property
    def w2(self) -> int:
        return len(self.support) - self.w1

    def __str__(self) -> str:
        return " ".join(map(str, self.support))


@dataclass(frozen=True)
class DoublyCode:
    n1: int
    w1: int
    n2: int
    w2: int
    words: tuple[DoublyWord, ...]

    def __post_init__(self):
        ws = tuple(sorted(self.words))
        if len(set(ws)) != len(ws):
            raise ValueError("duplicate codewords")
        for c in ws:
            if (c.n1, c.n2, c.w1, c.w2) != (self.n1, self.n2, self.w1, self.w2):
                raise ValueError(f"word {c.support} does not match the doubly parameters")
        object.__setattr__(self, "words", ws)

    @classmethod
    def of(cls, n1, w1, n2, w2, supports) -> "DoublyCode":
        return cls(n1, w1, n2, w2, tuple(DoublyWord.of(n1, n2, s) for s in supports))

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)


def j_distance(u, v) -> int:
    """Johnson distance: weight minus the size of the common support."""
    if isinstance(u, Word) and isinstance(v, Word):
        if u.n != v.n or u.w != v.w:
            raise ValueError("words live in different Johnson spaces")
    elif isinstance(u, DoublyWord) and isinstance(v, DoublyWord):
        if (u.n1, u.n2, u.w1, u.w2) != (v.n1, v.n2, v.w1, v.w2):
            raise ValueError("words live in different doubly spaces")
    else:
        raise TypeError("j_distance needs two words of the same kind")
    return len(u.support) - (u.mask & v.mask).bit_count()


def h_distance(u, v) -> int:
    return (u.mask ^ v.mask).bit_count()


def sphere_size(n: int, w: int, e: int) -> int:
    """Number of words of J(n,w) within distance e of a fixed word."""
    if not 0 <= w <= n or e < 0:
        raise ValueError("need 0 <= w <= n and e >= 0")
    return sum(binom(w, i) * binom(n - w, i) for i in range(e + 1))


def sphere_size_doubly(n1: int, w1: int, n2: int, w2: int, e: int) -> int:
    if not (0 <= w1 <= n1 and 0 <= w2 <= n2) or e < 0:
        raise ValueError("need 0 <= w1 <= n1, 0 <= w2 <= n2, e >= 0")
    total = 0
    for i in range(e + 1):
        left = binom(w1, i) * binom(n1 - w1, i)
        if left == 0:
            continue
        total += left * sum(binom(w2, j) * binom(n2 - w2, j) for j in range(e - i + 1))
    return total


def space_size(n: int, w: int) -> int:
    return binom(n, w)


def space_size_doubly(n1: int, w1: int, n2: int, w2: int) -> int:
    return binom(n1, w1) * binom(n2, w2)


# -- enumeration -----------------------------------------------------------

def _subset_masks(pool: Sequence[int], k: int) -> Iterator[int]:
    for combo in combinations(pool, k):
        m = 0
        for i in combo:
            m |= 1 << i
        yield m


def all_words(n: int, w: int, guard: int = MAX_SPACE) -> Iterator[Word]:
    if binom(n, w) > guard:
        raise EnumerationGuardError(f"J({n},{w}) has {binom(n, w)} words, guard is {guard}")
    for combo in combinations(range(n), w):
        yield Word(n, combo)


def all_doubly_words(n1, w1, n2, w2, guard: int = MAX_SPACE) -> Iterator[DoublyWord]:
    size = space_size_doubly(n1, w1, n2, w2)
    if size > guard:
        raise EnumerationGuardError(f"doubly space has {size} words, guard is {guard}")
    for a in combinations(range(n1), w1):
        for b in combinations(range(n1, n1 + n2), w2):
            yield DoublyWord(n1, n2, a + b)


def _ball_masks(mask: int, blocks: Sequence[tuple[int, ...]], e: int) -> Iterator[int]:
    """Masks within J-distance e of ``mask``; blocks are coordinate ranges swapped independently."""
    per_block = []
    for block in blocks:
        inside = [i for i in block if mask >> i & 1]
        outside = [i for i in block if not mask >> i & 1]
        per_block.append((inside, outside))

    def rec(b: int, budget: int, cur: int):
        if b == len(per_block):
            yield cur
            return
        inside, outside = per_block[b]
        for r in range(min(budget, len(inside), len(outside)) + 1):
            for out_m in _subset_masks(inside, r):
                for in_m in _subset_masks(outside, r):
                    yield from rec(b + 1, budget - r, (cur & ~out_m) | in_m)

    yield from rec(0, e, mask)


def ball(word: Word, e: int) -> Iterator[Word]:
    for m in _ball_masks(word.mask, [tuple(range(word.n))], e):
        yield Word.from_mask(word.n, m)


def ball_doubly(word: DoublyWord, e: int) -> Iterator[DoublyWord]:
    blocks = [tuple(range(word.n1)), tuple(range(word.n1, word.n1 + word.n2))]
    for m in _ball_masks(word.mask, blocks, e):
        yield DoublyWord(word.n1, word.n2, _indices(m))


@dataclass(frozen=True)
class PerfectVerdict:
    perfect: bool
    e: int
    code_size: int
    space_size: int
    sphere_size: int
    min_distance: Optional[int]
    uncovered: Optional[object] = None
    overcovered: Optional[object] = None

    def __bool__(self) -> bool:
        return self.perfect

    @property
    def status(self) -> str:
        return "PERFECT" if self.perfect else "NOT PERFECT"


def _min_distance(words) -> Optional[int]:
    best = None
    ws = list(words)
    for i in range(len(ws)):
        for j in range(i + 1, len(ws)):
            d = len(ws[i].support) - (ws[i].mask & ws[j].mask).bit_count()
            if best is None or d < best:
                best = d
    return best


def _verify(space_iter, code_words, ball_fn, e, sphere, total, make_word) -> PerfectVerdict:
    counts: Counter = Counter()
    for c in code_words:
        for m in ball_fn(c, e):
            counts[m] += 1
    uncovered = overcovered = None
    for v in space_iter:
        k = counts.get(v.mask, 0)
        if k == 0 and uncovered is None:
            uncovered = v
        elif k > 1 and overcovered is None:
            overcovered = v
        if uncovered is not None and overcovered is not None:
            break
    perfect = uncovered is None and overcovered is None
    md = _min_distance(code_words)
    if perfect:
        assert len(code_words) * sphere == total
        if md is not None:
            assert md == 2 * e + 1, f"perfect code with minimum distance {md} != {2 * e + 1}"
    return PerfectVerdict(perfect, e, len(code_words), total, sphere, md, uncovered, overcovered)


def verify_perfect(code: Code, e: int, guard: int = MAX_SPACE, max_n: int = MAX_N) -> PerfectVerdict:
    """Exhaustively decide whether the radius-e balls around ``code`` partition J(n,w)."""
    if code.n > max_n:
        raise EnumerationGuardError(f"n={code.n} exceeds the enumeration guard {max_n}")
    total = binom(code.n, code.w)
    if total > guard:
        raise EnumerationGuardError(f"J({code.n},{code.w}) has {total} words, guard is {guard}")
    whole = [tuple(range(code.n))]
    return _verify(
        all_words(code.n, code.w, guard),
        code.words,
        lambda c, r: _ball_masks(c.mask, whole, r),
        e,
        sphere_size(code.n, code.w, e),
        total,
        None,
    )


def verify_perfect_doubly(code: DoublyCode, e: int, guard: int = MAX_SPACE) -> PerfectVerdict:
    total = space_size_doubly(code.n1, code.w1, code.n2, code.w2)
    if total > guard:
        raise EnumerationGuardError(f"doubly space has {total} words, guard is {guard}")
    blocks = [tuple(range(code.n1)), tuple(range(code.n1, code.n1 + code.n2))]
    return _verify(
        all_doubly_words(code.n1, code.w1, code.n2, code.w2, guard),
        code.words,
        lambda c, r: _ball_masks(c.mask, blocks, r),
        e,
        sphere_size_doubly(code.n1, code.w1, code.n2, code.w2, e),
        total,
        None,
    )


def complement_code(code: Union[Code, DoublyCode], which: str = "whole"):
    """Complement the supports inside the first block, the second block, or everywhere."""
    if isinstance(code, Code):
        if which not in ("whole", "first-block"):
            raise ValueError("a Johnson code has a single block")
        full = (1 << code.n) - 1
        return Code(code.n, code.n - code.w, tuple(Word.from_mask(code.n, c.mask ^ full) for c in code))
    n1, n2 = code.n1, code.n2
    first = (1 << n1) - 1
    second = ((1 << n2) - 1) << n1
    flip = {"first-block": first, "second-block": second, "whole": first | second}
    if which not in flip:
        raise ValueError(f"unknown block {which!r}")
    w1 = n1 - code.w1 if which in ("first-block", "whole") else code.w1
    w2 = n2 - code.w2 if which in ("second-block", "whole") else code.w2
    words = tuple(DoublyWord(n1, n2, _indices(c.mask ^ flip[which])) for c in code)
    return DoublyCode(n1, w1, n2, w2, words)


# -- configuration distributions ---------------------------------------------

@dataclass(frozen=True)
class ConfigDistribution:
    """counts[i] = number of codewords with exactly i ones inside the block."""

    k: int
    n: int
    block: tuple[int, ...]
    counts: tuple[int, ...]
    leader: Optional[int] = None
    permutation: Optional[tuple[int, ...]] = None

    @property
    def total(self) -> int:
        return sum(self.counts)

    def by_distance(self) -> tuple[int, ...]:
        """Re-index by i = w - (ones in block), the distance-style index used for k = w."""
        return tuple(reversed(self.counts))


def _nearest_distance(mask: int, w: int, code_masks: Sequence[int]) -> int:
    return min(w - (mask & c).bit_count() for c in code_masks)


def translate_block(code: Code, leader: int) -> tuple[int, ...]:
    """Lexicographically least w-subset whose nearest codeword is at distance ``leader``."""
    masks = [c.mask for c in code]
    for combo in combinations(range(code.n), code.w):
        if _nearest_distance(_mask(combo), code.w, masks) == leader:
            return combo
    raise ValueError(f"no w-subset is at distance {leader} from the code")


def configuration_distribution(code: Code, k: Optional[int] = None, leader: Optional[int] = None,
                               block: Optional[Iterable[int]] = None) -> ConfigDistribution:
    """Count codewords by the number of ones they put inside a block.

    By default the block is the prefix {0..k-1}.  With ``leader`` = j the block
    is the translate block (size w) whose covering codeword sits at distance j;
    the coordinate permutation that moves it to the prefix is reported.
    """
    perm = None
    if leader is not None:
        blk = translate_block(code, leader)
        rest = tuple(i for i in range(code.n) if i not in blk)
        perm = blk + rest
    elif block is not None:
        blk = tuple(sorted(block))
    else:
        if k is None:
            raise ValueError("give k, block or leader")
        blk = tuple(range(k))
    bm = _mask(blk)
    size = len(blk)
    top = min(size, code.w)
    counts = [0] * (top + 1)
    for c in code:
        counts[(c.mask & bm).bit_count()] += 1
    return ConfigDistribution(size, code.n, blk, tuple(counts), leader, perm)


# -- anticodes --------------------------------------------------------------

@dataclass(frozen=True)
class Anticode:
    words: tuple
    size: int
    diameter: int


def _diameter(words) -> int:
    best = 0
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            d = len(words[i].support) - (words[i].mask & words[j].mask).bit_count()
            if d > best:
                best = d
    return best


def anticode_ball(n: int, w: int, t: int, flavor: str = "fixed-t-subset", guard: int = 10**5) -> Anticode:
    """Build one of the two explicit anticodes of diameter w - t.

    ``fixed-t-subset``: all words containing {0..t-1}.
    ``S-intersecting``: all words meeting S = {0..t+1} in at least t+1 points.
    """
    if not 0 <= t <= w <= n:
        raise ValueError("need 0 <= t <= w <= n")
    if binom(n, w) > guard:
        raise EnumerationGuardError(f"J({n},{w}) exceeds anticode guard {guard}")
    if flavor == "fixed-t-subset":
        base = _mask(range(t))
        words = tuple(Word(n, c) for c in combinations(range(n), w) if _mask(c) & base == base)
    elif flavor == "S-intersecting":
        s = _mask(range(min(t + 2, n)))
        words = tuple(Word(n, c) for c in combinations(range(n), w) if (_mask(c) & s).bit_count() >= t + 1)
    else:
        raise ValueError(f"unknown anticode flavor {flavor!r}")
    return Anticode(words, len(words), _diameter(words))


def anticode_ball_doubly(n1: int, w1: int, t1: int, n2: int, w2: int, t2: int, guard: int = 10**5) -> Anticode:
    """All doubly words containing {0..t1-1} in the first block and the first t2 of the second."""
    if space_size_doubly(n1, w1, n2, w2) > guard:
        raise EnumerationGuardError("doubly space exceeds anticode guard")
    base = _mask(range(t1)) | _mask(range(n1, n1 + t2))
    words = tuple(v for v in all_doubly_words(n1, w1, n2, w2, guard) if v.mask & base == base)
    return Anticode(words, len(words), _diameter(words))


def anticode_size_fixed(n: int, w: int, t: int) -> int:
    return binom(n - t, w - t)


def anticode_size_s_intersecting(n: int, w: int, t: int) -> int:
    return binom(n - t - 2, w - t - 2) + (t + 2) * binom(n - t - 2, w - t - 1)


# -- code files -------------------------------------------------------------

def _parse_header(line: str, lineno: int) -> dict[str, int]:
    out = {}
    for tok in line.split():
        if "=" not in tok:
            raise CodeFileError(lineno, f"bad header token {tok!r}")
        key, _, val = tok.partition("=")
        if key not in ("n", "w", "n1", "w1", "n2", "w2"):
            raise CodeFileError(lineno, f"unknown header key {key!r}")
        try:
            out[key] = int(val)
        except ValueError:
            raise CodeFileError(lineno, f"header value {val!r} is not an integer") from None
    return out


def parse_code_text(text: str) -> Union[Code, DoublyCode]:
    """Parse the one-word-per-line format ('#' comments, optional n= w= header)."""
    header: dict[str, int] = {}
    rows: list[tuple[int, tuple[int, ...]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" in line:
            if rows or header:
                raise CodeFileError(lineno, "header must come before the words")
            header = _parse_header(line, lineno)
            continue
        try:
            idx = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise CodeFileError(lineno, f"non-integer coordinate in {line!r}") from None
        if any(i < 0 for i in idx):
            raise CodeFileError(lineno, "negative coordinate")
        if len(set(idx)) != len(idx):
            raise CodeFileError(lineno, "repeated coordinate")
        rows.append((lineno, tuple(sorted(idx))))
    if not rows:
        raise CodeFileError(0, "no words")
    doubly = any(k in header for k in ("n1", "n2", "w1", "w2"))
    if doubly:
        missing = [k for k in ("n1", "w1", "n2", "w2") if k not in header]
        if missing:
            raise CodeFileError(1, f"doubly header missing {', '.join(missing)}")
        n1, w1, n2, w2 = header["n1"], header["w1"], header["n2"], header["w2"]
        seen = set()
        words = []
        for lineno, idx in rows:
            if idx[-1] >= n1 + n2:
                raise CodeFileError(lineno, f"coordinate {idx[-1]} >= n1+n2={n1 + n2}")
            a = sum(1 for i in idx if i < n1)
            if (a, len(idx) - a) != (w1, w2):
                raise CodeFileError(lineno, f"word has weights ({a},{len(idx) - a}), expected ({w1},{w2})")
            if idx in seen:
                raise CodeFileError(lineno, "duplicate word")
            seen.add(idx)
            words.append(DoublyWord(n1, n2, idx))
        return DoublyCode(n1, w1, n2, w2, tuple(words))
    w = header.get("w", len(rows[0][1]))
    n = header.get("n", max(idx[-1] for _, idx in rows if idx) + 1)
    seen = set()
    words = []
    for lineno, idx in rows:
        if len(idx) != w:
            raise CodeFileError(lineno, f"word has weight {len(idx)}, expected {w}")
        if idx and idx[-1] >= n:
            raise CodeFileError(lineno, f"coordinate {idx[-1]} >= n={n}")
        if idx in seen:
            raise CodeFileError(lineno, "duplicate word")
        seen.add(idx)
        words.append(Word(n, idx))
    return Code(n, w, tuple(words))


def read_code_file(path: Union[str, Path]) -> Union[Code, DoublyCode]:
    return parse_code_text(Path(path).read_text())


def format_code(code: Union[Code, DoublyCode]) -> str:
    if isinstance(code, Code):
        lines = [f"n={code.n} w={code.w}"]
    else:
        lines = [f"n1={code.n1} w1={code.w1} n2={code.n2} w2={code.w2}"]
    lines += [str(c) for c in code]
    return "\n".join(lines) + "\n"
