"""Strength polynomials, configuration recurrences and binomial moments.

Indexing: unless a docstring says otherwise, A_i counts codewords with i ones
inside the block H1 (|H1| = k).  The "distance" index used for the identity
in J(2w,w) is the reverse, i -> w - i.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .exactmath import binom, falling, is_square, stirling2
from .johnson import Code, complement_code, configuration_distribution, sphere_size, verify_perfect

Number = Union[int, Fraction]


class InconsistentBoundaryError(ValueError):
    pass


# -- strength ---------------------------------------------------------------

def sigma_e(n: int, w: int, t: int, e: int) -> int:
    """sum_i (-1)^i C(t,i) sum_{j<=e-i} C(w-i,j) C(n-w-t+i,i+j)."""
    total = 0
    for i in range(e + 1):
        inner = sum(binom(w - i, j) * binom(n - w - t + i, i + j) for j in range(e - i + 1))
        total += (-1) ** i * binom(t, i) * inner
    return total


@dataclass(frozen=True)
class StrengthResult:
    n: int
    w: int
    e: int
    phi: Optional[int]
    path: str
    discriminants: tuple = ()
    branches: tuple = ()

    @property
    def integral(self) -> bool:
        return self.phi is not None


def _canonical(n: int, w: int) -> tuple[int, int]:
    if not 0 <= w <= n:
        raise ValueError("need 0 <= w <= n")
    return (n, n - w) if n < 2 * w else (n, w)


def strength_scan(n: int, w: int, e: int) -> Optional[int]:
    """First m in 1..w+1 with sigma_e(n,w,m) = 0, minus one."""
    for m in range(1, w + 2):
        if sigma_e(n, w, m, e) == 0:
            return m - 1
    return None


def strength(n: int, w: int, e: int) -> StrengthResult:
    """Strength a hypothetical e-perfect code in J(n,w) must have.

    e=1 uses the closed quadratic root, e=2 with n=2w the nested radical
    (both inner signs), anything else scans sigma_e for its first root.
    phi is None when no admissible integer root exists.
    """
    n, w = _canonical(n, w)
    if e == 1:
        d = (n - 2 * w + 1) ** 2 + 4 * (w - 1)
        s = is_square(d)
        phi = None
        if s is not None and (n - 1 - s) % 2 == 0 and n - 1 - s >= 0:
            phi = (n - 1 - s) // 2
        return StrengthResult(n, w, e, phi, "closed-form", (d,), (phi,))
    if e == 2 and n == 2 * w:
        inner = 2 * w * w - 6 * w + 5
        s = is_square(inner)
        if s is None:
            return StrengthResult(n, w, e, None, "nested-radical", (inner,), (None, None))
        branches = []
        discs = [inner]
        for sign in (+1, -1):
            r = 8 * w - 11 + sign * 4 * s
            discs.append(r)
            c = is_square(r)
            if c is None or (2 * w - 1 - c) % 2 or 2 * w - 1 - c < 0:
                branches.append(None)
            else:
                branches.append((2 * w - 1 - c) // 2)
        ok = [b for b in branches if b is not None]
        return StrengthResult(n, w, e, min(ok) if ok else None, "nested-radical", tuple(discs), tuple(branches))
    return StrengthResult(n, w, e, strength_scan(n, w, e), "sigma-scan")


def strength_from_moment_relation(n: int, w: int) -> Optional[int]:
    """phi from the vanishing of 1 + k^2 - k(1+n) + nw - w^2 at k = phi + 1 (smaller root)."""
    d = (1 + n) ** 2 - 4 * (1 + n * w - w * w)
    s = is_square(d)
    if s is None or (1 + n - s) % 2:
        return None
    k = (1 + n - s) // 2
    return k - 1 if k >= 1 else None


# -- exact bivariate polynomials in (w, a) -------------------------------------

class BivariatePoly:
    """Polynomial in w and a with Fraction coefficients; {(i, j): c} means c w^i a^j."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[tuple[int, int], Number]] = None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def const(cls, c: Number) -> "BivariatePoly":
        return cls({(0, 0): c})

    @classmethod
    def coerce(cls, x) -> "BivariatePoly":
        return x if isinstance(x, BivariatePoly) else cls.const(x)

    def __add__(self, other):
        other = BivariatePoly.coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BivariatePoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-BivariatePoly.coerce(other))

    def __rsub__(self, other):
        return BivariatePoly.coerce(other) - self

    def __mul__(self, other):
        other = BivariatePoly.coerce(other)
        out: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return BivariatePoly(out)

    __rmul__ = __mul__

    def __truediv__(self, c: Number):
        c = Fraction(c)
        return BivariatePoly({k: v / c for k, v in self.terms.items()})

    def __eq__(self, other):
        return self.terms == BivariatePoly.coerce(other).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __call__(self, w: Number, a: Number) -> Fraction:
        return sum((c * Fraction(w) ** i * Fraction(a) ** j for (i, j), c in self.terms.items()), Fraction(0))

    def denominator(self) -> int:
        return math.lcm(*(c.denominator for c in self.terms.values())) if self.terms else 1

    def integer_numerator(self) -> tuple[dict[tuple[int, int], int], int]:
        """(integer coefficient dict, D) with self = numerator / D and D minimal over coefficients."""
        d = self.denominator()
        return {k: int(v * d) for k, v in self.terms.items()}, d

    def __repr__(self):
        parts = [f"{c}*w^{i}*a^{j}" for (i, j), c in sorted(self.terms.items())]
        return " + ".join(parts) or "0"


W = BivariatePoly({(1, 0): 1})
A = BivariatePoly({(0, 1): 1})


def poly_binom(x: BivariatePoly, r: int) -> BivariatePoly:
    """C(x, r) as a polynomial; zero for r < 0."""
    if r < 0:
        return BivariatePoly()
    return falling(x, r) / math.factorial(r)


# -- the three-term configuration recurrence (e = 1) ----------------------------

def recurrence_coefficients(i, k, w, a, variant: str = "corrected"):
    """(up, mid, down, rhs) so that up*A_{i+1} + mid*A_i + down*A_{i-1} = rhs.

    Integer arguments only.  ``variant='printed'`` uses the
    middle coefficient 1 + i(k-1) + ..., kept only to demonstrate that it is wrong.
    """
    up = (i + 1) * (w + a - k + i + 1)
    if variant == "corrected":
        mid = 1 + i * (k - i) + (w - i) * (w + a - k + i)
    elif variant == "printed":
        mid = 1 + i * (k - 1) + (w - i) * (w + a - k + i)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    down = (k - i + 1) * (w - i + 1)
    if isinstance(i, int) and isinstance(k, int) and isinstance(w, int) and isinstance(a, int):
        rhs = binom(k, i) * binom(2 * w + a - k, w - i)
    else:
        raise TypeError("symbolic right-hand sides go through symbolic_config_values")
    return up, mid, down, rhs


def recurrence_residual(values: Mapping[int, Number], i: int, k: int, w: int, a: int,
                        variant: str = "corrected") -> Fraction:
    """lhs - rhs of the equation at index i; missing values count as zero."""
    up, mid, down, rhs = recurrence_coefficients(i, k, w, a, variant)
    g = lambda j: Fraction(values.get(j, 0))
    return up * g(i + 1) + mid * g(i) + down * g(i - 1) - rhs


@dataclass(frozen=True)
class RecurrenceSolution:
    n: int
    w: int
    k: int
    variant: str
    values: tuple[Fraction, ...]
    residuals: tuple[tuple[int, Fraction], ...]

    @property
    def integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)

    @property
    def nonnegative(self) -> bool:
        return all(v >= 0 for v in self.values)

    @property
    def consistent(self) -> bool:
        return all(r == 0 for _, r in self.residuals)

    @property
    def passed(self) -> bool:
        return self.integral and self.nonnegative and self.consistent

    def witness(self):
        for i, v in enumerate(self.values):
            if v.denominator != 1 or v < 0:
                return ("A", i, v)
        for i, r in self.residuals:
            if r != 0:
                return ("residual", i, r)
        return None

    def moment(self, r: int) -> Fraction:
        return sum((binom(i, r) * v for i, v in enumerate(self.values)), Fraction(0))


def config_recurrence_solve(n: int, w: int, k: int, boundary: Mapping[int, Number],
                            variant: str = "corrected", strict: bool = True) -> RecurrenceSolution:
    """Solve the three-term recurrence downward from the top index T = min(k, w).

    ``boundary`` gives A_T and optionally A_{T-1}; a missing A_{T-1} is read off
    the top equation.  If both are given they must satisfy it (``strict``).
    Values above T are zero.  Residuals of every equation are reported; the
    i = 0 one is the real consistency test.
    """
    a = n - 2 * w
    if not 0 <= k <= n or not 0 <= w <= n:
        raise ValueError("need 0 <= k, w <= n")
    top = min(k, w)
    if top not in boundary:
        raise InconsistentBoundaryError(f"boundary must give A_{top}")
    extra = set(boundary) - {top, top - 1}
    if extra:
        raise InconsistentBoundaryError(f"boundary indices {sorted(extra)} are not the top pair")
    vals: dict[int, Fraction] = {top: Fraction(boundary[top])}
    up, mid, down, rhs = recurrence_coefficients(top, k, w, a, variant)
    if top >= 1:
        if down == 0:
            raise InconsistentBoundaryError("top equation does not involve the next value")
        derived = (rhs - mid * vals[top]) / down
        if top - 1 in boundary:
            given = Fraction(boundary[top - 1])
            if strict and given != derived:
                raise InconsistentBoundaryError(
                    f"A_{top - 1} = {given} contradicts the top equation (needs {derived})")
            vals[top - 1] = given
        else:
            vals[top - 1] = derived
    for i in range(top - 1, 0, -1):
        up, mid, down, rhs = recurrence_coefficients(i, k, w, a, variant)
        vals[i - 1] = (rhs - up * vals.get(i + 1, 0) - mid * vals[i]) / down
    res = tuple((i, recurrence_residual(vals, i, k, w, a, variant)) for i in range(top + 1))
    return RecurrenceSolution(n, w, k, variant, tuple(vals[i] for i in range(top + 1)), res)


def symbolic_config_values(k_offset: int, top_value: Number, depth: int) -> dict[int, BivariatePoly]:
    """Symbolic solution of the recurrence with k = w + k_offset, n = 2w + a.

    Returns {m: A_{top - m}} for m = 0..depth where top = min(k, w); for
    generic large w the divisors at i = w - m are constants, so every value
    is a polynomial in (w, a).
    """
    k = W + k_offset
    top_off = min(k_offset, 0)  # top = w + top_off
    vals: dict[int, BivariatePoly] = {0: BivariatePoly.const(top_value)}

    def coeffs(m: int):
        i = W + (top_off - m)
        up = (i + 1) * (W + A - k + i + 1)
        mid = 1 + i * (k - i) + (W - i) * (W + A - k + i)
        down_const = (k_offset - top_off + m + 1) * (m - top_off + 1)  # (k-i+1)(w-i+1)
        # C(k, i) C(n-k, w-i) with k - i = k_offset - top_off + m and w - i = m - top_off
        rhs = poly_binom(k, k_offset - top_off + m) * poly_binom(W + A - k_offset, m - top_off)
        return up, mid, down_const, rhs

    up, mid, down, rhs = coeffs(0)
    vals[1] = (rhs - mid * vals[0]) / down
    for m in range(1, depth):
        up, mid, down, rhs = coeffs(m)
        vals[m + 1] = (rhs - up * vals[m - 1] - mid * vals[m]) / down
    return vals


# -- 1-perfect moments ---------------------------------------------------------

def delta_moment_1perfect(n: int, w: int, k: int) -> Fraction:
    """(-1)^(w-k) prod_{l=1}^{w-k} [(l-1)n + l^2 - l + 1 - w(2l-1)] / l^2."""
    p = Fraction(1)
    for l in range(1, w - k + 1):
        p *= Fraction((l - 1) * n + l * l - l + 1 - w * (2 * l - 1), l * l)
    return -p if (w - k) % 2 else p


def covering_moment(n: int, w: int, k: int) -> int:
    """sum_i C(i,k) C(w,i) C(n-w,w-i) = C(w,k) C(n-k,w-k), ones indexed."""
    return binom(w, k) * binom(n - k, w - k)


@dataclass(frozen=True)
class MomentTriple:
    delta: Fraction
    b: Fraction
    a: Fraction

    @property
    def integral(self) -> bool:
        return all(x.denominator == 1 for x in (self.delta, self.b, self.a))


def delta_moments_1perfect(n: int, w: int, k: int) -> MomentTriple:
    """Closed forms for the k-th binomial moments of Delta, B (translate) and A (aligned)."""
    m = delta_moment_1perfect(n, w, k)
    t = covering_moment(n, w, k)
    phi1 = 1 + w * (n - w)
    return MomentTriple(m, (t - m) / phi1, (w * (n - w) * m + t) / phi1)


def delta_moments_1perfect_printed_b(n: int, w: int, k: int) -> Fraction:
    """B-moment with C(n-w,k) C(n-k,w-k) in place of C(w,k) C(n-k,w-k).

    That form counts by distance rather than by ones; both agree only at n = 2w.
    """
    m = delta_moment_1perfect(n, w, k)
    return (binom(n - w, k) * binom(n - k, w - k) - m) / (1 + w * (n - w))


def aligned_and_translate(n: int, w: int, variant: str = "corrected", strict: bool = True):
    """Recurrence solutions for k = w with A_w = 1 (aligned) and B_w = 0, B_{w-1} = 1 (translate)."""
    al = config_recurrence_solve(n, w, w, {w: 1}, variant, strict)
    tr = config_recurrence_solve(n, w, w, {w: 0, w - 1: 1}, variant, strict)
    return al, tr


def delta_moments_1perfect_recurrence(n: int, w: int, k: int) -> MomentTriple:
    al, tr = aligned_and_translate(n, w)
    sa, sb = al.moment(k), tr.moment(k)
    return MomentTriple(sa - sb, sb, sa)


def prop48_coefficients(n: int, w: int, k: int) -> tuple[int, int]:
    return 1 + k * k - k * (1 + n) + n * w - w * w, (1 - k + w) ** 2


def prop48_residual(n: int, w: int, k: int, m_k: Number, m_km1: Number) -> Fraction:
    c0, c1 = prop48_coefficients(n, w, k)
    return c0 * Fraction(m_k) + c1 * Fraction(m_km1)


def delta_moment_w5_poly() -> BivariatePoly:
    """k = w-5 Delta-moment as a polynomial in (w, a), n = 2w + a."""
    p = BivariatePoly.const(1)
    for l in range(1, 6):
        p = p * ((l - 1) * A - W + (l * l - l + 1))
    return -p / (math.factorial(5) ** 2)


def table_expressions() -> dict[str, BivariatePoly]:
    """The four quantities whose integrality drives the mod-60 tables."""
    return {
        "delta_w5": delta_moment_w5_poly(),
        "A_w5": symbolic_config_values(0, 1, 5)[5],
        "B_w5": symbolic_config_values(-2, 1, 3)[3],
        "C_w3": symbolic_config_values(2, 1, 3)[3],
    }


def closed_A_w5(w, a):
    return Fraction(w * (w - 1) * (w + a) * (w + a - 1), 14400) * (
        a * a * (26 + (w - 9) * w) + (w - 3) * (-181 + w * (87 + (w - 15) * w))
        + a * (-221 + w * (132 + w * (2 * w - 27))))


def closed_B_w5(w, a):
    return Fraction((w + a - 1) * (w + a), 15 * 48) * (
        a * a * (26 + (w - 9) * w) + (w - 3) * (19 + w * (-3 + (w - 5) * w))
        + a * (-21 + w * (42 + w * (2 * w - 17))))


def closed_C_w3(w, a):
    """Reading with the a-term outside the (w-3) factor; this one matches the recurrence."""
    return Fraction(w * (w - 1), 15 * 48) * (
        a * a * (-4 + (w + 1) * w) + (w - 3) * (19 + w * (-3 + (w - 5) * w))
        + a * (49 + w * (-18 + w * (2 * w - 7))))


def closed_C_w3_literal(w, a):
    """Bracketing taken literally (a-term nested inside); does not match."""
    return Fraction(w * (w - 1), 15 * 48) * (
        a * a * (-4 + (w + 1) * w) + (w - 3) * (19 + w * (-3 + (w - 5) * w + a * (49 + w * (-18 + w * (2 * w - 7))))))


def closed_delta_w5(w, a):
    return Fraction((w - 1) * (a - w + 3) * (2 * a - w + 7) * (3 * a - w + 13) * (4 * a - w + 21), 14400)


# -- 2-perfect moments in J(2w, w) ---------------------------------------------

def F2(w, j):
    return 20 + (j - 3) * j * (10 + (j - 3) * j) - 14 * w - 4 * (j - 3) * j * w + 2 * w * w


def G2(w, j):
    return 2 * (j - 1) ** 2 * (4 + (j - 2) * j - 2 * w)


def delta_moments_2perfect_all(w: int, leader: int) -> dict[int, Fraction]:
    """{k: sum_i C(i,k) Delta_{i,leader}} for k = 0..w via the two-step recursion."""
    if leader not in (1, 2):
        raise ValueError("leader must be 1 or 2")
    m = {w: Fraction(1), w - 1: Fraction(w - 1 if leader == 1 else w)}
    for j in range(2, w + 1):
        m[w - j] = -(F2(w, j) * m[w - j + 2] + G2(w, j) * m[w - j + 1]) / ((j - 1) ** 2 * j * j)
    return m


def delta_moments_2perfect(w: int, k: int, leader: int) -> Fraction:
    if not 0 <= k <= w:
        raise ValueError("need 0 <= k <= w")
    if k == w:
        return Fraction(1)
    if k == w - 1:
        return Fraction(w - 1 if leader == 1 else w)
    m = [Fraction(1), Fraction(w - 1 if leader == 1 else w)]
    for j in range(2, w - k + 1):
        m.append(-(F2(w, j) * m[-2] + G2(w, j) * m[-1]) / ((j - 1) ** 2 * j * j))
    return m[-1]


def delta_2perfect_poly(j: int, leader: int) -> "UniPoly":
    """Moment at k = w - j as a polynomial in w (exact rational coefficients)."""
    m = [UniPoly([1]), UniPoly([-1, 1]) if leader == 1 else UniPoly([0, 1])]
    for jj in range(2, j + 1):
        f = UniPoly([20 + (jj - 3) * jj * (10 + (jj - 3) * jj), -14 - 4 * (jj - 3) * jj, 2])
        g = UniPoly([2 * (jj - 1) ** 2 * (4 + (jj - 2) * jj), -4 * (jj - 1) ** 2])
        m.append((f * m[-2] + g * m[-1]).scale(Fraction(-1, (jj - 1) ** 2 * jj * jj)))
    return m[j]


class UniPoly:
    """Dense univariate polynomial in w with Fraction coefficients (low degree first)."""

    def __init__(self, coeffs: Iterable[Number]):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = c

    def __add__(self, o):
        n = max(len(self.c), len(o.c))
        return UniPoly([(self.c[i] if i < len(self.c) else 0) + (o.c[i] if i < len(o.c) else 0) for i in range(n)])

    def __mul__(self, o):
        out = [Fraction(0)] * (len(self.c) + len(o.c))
        for i, x in enumerate(self.c):
            for j, y in enumerate(o.c):
                out[i + j] += x * y
        return UniPoly(out)

    def scale(self, s: Number):
        return UniPoly([x * s for x in self.c])

    def __call__(self, w: Number) -> Fraction:
        acc = Fraction(0)
        for x in reversed(self.c):
            acc = acc * w + x
        return acc

    def __eq__(self, o):
        return isinstance(o, UniPoly) and self.c == o.c

    def integer_numerator(self) -> tuple[list[int], int]:
        d = math.lcm(*(x.denominator for x in self.c)) if self.c else 1
        return [int(x * d) for x in self.c], d


# closed forms listed for j = 2..7; keys are (j, leader)
CLOSED_2PERFECT = {
    (2, 1): lambda w: Fraction((w - 1) * (w - 2), 2),
    (2, 2): lambda w: Fraction((w + 1) * (w - 2), 2),
    (3, 1): lambda w: Fraction((w - 1) * (w - 2) * (w - 3), 6),
    (3, 2): lambda w: Fraction((w - 2) * (3 * w * w - 5 * w - 14), 2 * 9),
    (4, 1): lambda w: Fraction((w - 1) * (w - 2) * (w - 5) * (5 * w - 14), 9 * 16),
    (4, 2): lambda w: Fraction((w - 2) * (w - 5) * (5 * w * w - 7 * w - 26), 9 * 16),
    # listed with 7w^2; the recursion, the enumeration and the quartic relation all give 17w^2
    (5, 1): lambda w: Fraction((w - 1) * (w - 2) * (w - 5) * (334 - 171 * w + 17 * w * w), 9 * 16 * 25),
    (5, 2): lambda w: Fraction((w - 2) * (w - 5) * (17 * w**3 - 147 * w * w + 66 * w + 680), 9 * 16 * 25),
    (6, 1): lambda w: Fraction(2 * (w - 1) * (w - 2) * (w - 5) * (-5684 + 3544 * w - 589 * w * w + 29 * w**3),
                               9 * 16 * 25 * 36),
    (6, 2): lambda w: Fraction(2 * (w - 2) * (w - 5) * (-12228 + 228 * w + 2663 * w * w - 548 * w**3 + 29 * w**4),
                               9 * 16 * 25 * 36),
    (7, 1): lambda w: Fraction(2 * (w - 1) * (w - 2) * (w - 5)
                               * (262324 - 185444 * w + 39797 * w * w - 3376 * w**3 + 99 * w**4),
                               9 * 16 * 25 * 36 * 49),
    (7, 2): lambda w: Fraction(2 * (w - 2) * (w - 5)
                               * (585224 - 59628 * w - 123650 * w * w + 34855 * w**3 - 3236 * w**4 + 99 * w**5),
                               9 * 16 * 25 * 36 * 49),
}


def closed_2perfect_j5_leader1_as_listed(w):
    return Fraction((w - 1) * (w - 2) * (w - 5) * (334 - 171 * w + 7 * w * w), 9 * 16 * 25)


def prop49_coefficients(w: int, k: int) -> tuple[Fraction, Fraction, Fraction]:
    c0 = Fraction(4 + k**4 + 5 * w * w - 2 * w**3 + w**4 - 2 * k**3 * (1 + 2 * w) + k * k * (7 + 2 * w + 6 * w * w)
                  - 2 * k * (3 + 5 * w - w * w + 2 * w**3), 4)
    c1 = Fraction((1 - k + w) ** 2 * (4 + k * k + w * w - 2 * k * (1 + w)), 2)
    c2 = Fraction((1 - k + w) ** 2 * (2 - k + w) ** 2, 4)
    return c0, c1, c2


def prop49_residual(w: int, k: int, m_k: Number, m_km1: Number, m_km2: Number) -> Fraction:
    c0, c1, c2 = prop49_coefficients(w, k)
    return c0 * Fraction(m_k) + c1 * Fraction(m_km1) + c2 * Fraction(m_km2)


def two_cover_coefficients(i: int, w: int) -> tuple[int, int, int, int, int, int]:
    """(c_{+2}, c_{+1}, c_0, c_{-1}, c_{-2}, rhs) for how config-i words are 2-covered in J(2w,w)."""
    cp2 = binom(i + 2, 2) ** 2
    cp1 = (i + 1) ** 2 + 2 * (i + 1) * (w - i - 1) * binom(i + 1, 2)
    c0 = 1 + 2 * i * (w - i) + 2 * binom(i, 2) * binom(w - i, 2) + i * i * (w - i) ** 2
    cm1 = (w - i + 1) ** 2 + 2 * (i - 1) * (w - i + 1) * binom(w - i + 1, 2)
    cm2 = binom(w - i + 2, 2) ** 2
    return cp2, cp1, c0, cm1, cm2, binom(w, i) ** 2


def config_recurrence_solve_2perfect(w: int, leader: int) -> RecurrenceSolution:
    """Five-term recurrence in J(2w,w), ones indexed, solved from the top.

    leader 0 is the aligned partition (A_w = 1), leaders 1 and 2 the translates.
    """
    top = {0: (1, 0), 1: (0, 1), 2: (0, 0)}[leader]
    vals: dict[int, Fraction] = {w + 1: Fraction(0), w + 2: Fraction(0), w: Fraction(top[0]), w - 1: Fraction(top[1])}
    g = lambda j: vals.get(j, Fraction(0))
    for i in range(w, 1, -1):
        cp2, cp1, c0, cm1, cm2, rhs = two_cover_coefficients(i, w)
        vals[i - 2] = (rhs - cp2 * g(i + 2) - cp1 * g(i + 1) - c0 * g(i) - cm1 * g(i - 1)) / cm2
    residuals = []
    for i in range(w + 1):
        cp2, cp1, c0, cm1, cm2, rhs = two_cover_coefficients(i, w)
        residuals.append((i, cp2 * g(i + 2) + cp1 * g(i + 1) + c0 * g(i) + cm1 * g(i - 1) + cm2 * g(i - 2) - rhs))
    return RecurrenceSolution(2 * w, w, w, "two-cover", tuple(vals[i] for i in range(w + 1)), tuple(residuals))


# -- enumeration-side moments ----------------------------------------------------

def measured_distributions(code: Code, e: int) -> dict[int, tuple[int, ...]]:
    """Ones-indexed distributions for the aligned block (0) and translate leaders 1..e (k = w)."""
    first = code.words[0].support
    out = {0: configuration_distribution(code, block=first).counts}
    for j in range(1, e + 1):
        out[j] = configuration_distribution(code, leader=j).counts
    return out


def binomial_moment(values: Sequence[Number], k: int) -> Fraction:
    return sum((binom(i, k) * Fraction(v) for i, v in enumerate(values)), Fraction(0))


def lemma44_value(n: int, w: int, e: int, k: int, r: int) -> Fraction:
    """Common value of the r-th binomial moments for r up to the strength."""
    return binom(k, r) * Fraction(binom(n - r, w - r), sphere_size(n, w, e))


@dataclass(frozen=True)
class IdentityCheck:
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def is_self_complementary(code: Code) -> bool:
    return set(complement_code(code).words) == set(code.words)


def moment_identity_from_distributions(A_dist: Sequence[Number], B_dist: Sequence[Number], w: int, k: int) -> IdentityCheck:
    """w^2 sum C(i,k) Delta_i vs (2wk-k^2+k) sum C(i,k) A_i - (w-k+1)^2 sum C(i,k-1) A_i (distance indexed)."""
    delta = [Fraction(a) - Fraction(b) for a, b in zip(A_dist, B_dist)]
    lhs = w * w * binomial_moment(delta, k)
    rhs = (2 * w * k - k * k + k) * binomial_moment(A_dist, k) - (w - k + 1) ** 2 * binomial_moment(A_dist, k - 1)
    return IdentityCheck(lhs, rhs)


def moment_identity_J2w(code: Code, k: int, e: int) -> IdentityCheck:
    """Check the J(2w,w) moment identity on a concrete perfect self-complementary code."""
    if code.n != 2 * code.w:
        raise ValueError("the identity needs n = 2w")
    if not verify_perfect(code, e).perfect:
        raise ValueError(f"code is not {e}-perfect")
    if not is_self_complementary(code):
        raise ValueError("code is not self-complementary")
    dists = measured_distributions(code, 1)
    # reverse to the distance index: configuration (w-i, i)
    a_dist = tuple(reversed(dists[0]))
    b_dist = tuple(reversed(dists[1]))
    return moment_identity_from_distributions(a_dist, b_dist, code.w, k)


def prop52_sides(A_dist: Sequence[Number], w: int, k: int) -> IdentityCheck:
    """Raw four-term sum against its rearranged form (needs A_i = A_{w-i})."""
    raw = Fraction(0)
    for i, a in enumerate(A_dist):
        raw += (binom(w - i - 1, k - 1) * (w - i) ** 2 - binom(w - i, k - 1) * i * i
                + binom(i - 1, k - 1) * i * i - binom(i, k - 1) * (w - i) ** 2) * Fraction(a)
    rhs = 2 * (2 * w * k - k * k + k) * binomial_moment(A_dist, k) - 2 * (w - k + 1) ** 2 * binomial_moment(A_dist, k - 1)
    return IdentityCheck(raw, rhs)


# -- power vs binomial moments ---------------------------------------------------

def power_moment(delta: Sequence[Number], r: int) -> Fraction:
    return sum((Fraction(i) ** r * Fraction(d) for i, d in enumerate(delta)), Fraction(0))


def power_moment_via_stirling(delta: Sequence[Number], r: int) -> Fraction:
    return sum((math.factorial(v) * stirling2(r, v) * binomial_moment(delta, v) for v in range(r + 1)), Fraction(0))


@dataclass(frozen=True)
class MomentEquivalence:
    power_vanish: bool
    binomial_vanish: bool

    @property
    def equivalent(self) -> bool:
        return self.power_vanish == self.binomial_vanish


def stirling_moment_equivalence(delta: Sequence[Number], t: int) -> MomentEquivalence:
    """Do power moments vanish for r <= t exactly when binomial moments do?"""
    pw = all(power_moment(delta, r) == 0 for r in range(t + 1))
    bn = all(binomial_moment(delta, r) == 0 for r in range(t + 1))
    return MomentEquivalence(pw, bn)
