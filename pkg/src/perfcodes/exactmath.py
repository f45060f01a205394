"""Exact integer helpers shared by every other module.

Integers are plain Python ints and rationals are ``fractions.Fraction``;
both are arbitrary precision, so nothing here ever rounds.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Optional

TRIAL_BOUND = 10**6
RHO_BUDGET = 2_000_000

# Miller-Rabin with the first 13 prime bases is exact below this bound.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_EXACT_BELOW = 3317044064679887385961981


def binom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k) for any integers.

    Zero when k < 0 or k > n >= 0.  For negative n the polynomial
    extension (-1)^k C(k-n-1, k) is used.
    """
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k) if k <= n else 0
    c = math.comb(k - n - 1, k)
    return -c if k & 1 else c


def falling(x, k: int):
    """x (x-1) ... (x-k+1); works for ints, Fractions and polynomials."""
    out = 1
    for j in range(k):
        out = out * (x - j)
    return out


@lru_cache(maxsize=None)
def stirling2(r: int, v: int) -> int:
    """Stirling number of the second kind via S(r,v) = S(r-1,v-1) + v S(r-1,v)."""
    if r < 0 or v < 0:
        raise ValueError("stirling2 needs r, v >= 0")
    if r == 0 and v == 0:
        return 1
    if r == 0 or v == 0 or v > r:
        return 0
    # iterate rows instead of recursing so large r does not blow the stack
    row = [1]
    for rr in range(1, r + 1):
        new = [0] * (min(rr, v) + 1)
        for vv in range(1, len(new)):
            left = row[vv - 1] if vv - 1 < len(row) else 0
            up = row[vv] if vv < len(row) else 0
            new[vv] = left + vv * up
        row = new
    return row[v] if v < len(row) else 0


def stirling2_explicit(r: int, v: int) -> int:
    """S(r,v) = (1/v!) sum_i (-1)^(v-i) C(v,i) i^r."""
    total = sum((-1) ** (v - i) * math.comb(v, i) * i**r for i in range(v + 1))
    q, rem = divmod(total, math.factorial(v))
    assert rem == 0
    return q


def is_square(x: int) -> Optional[int]:
    """Nonnegative integer root of x if x is a perfect square, else None."""
    if x < 0:
        return None
    r = math.isqrt(x)
    return r if r * r == x else None


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> Optional[bool]:
    """Certain primality, or None when n is beyond the exact Miller-Rabin range."""
    if n < _MR_EXACT_BELOW:
        return is_probable_prime(n)
    if not is_probable_prime(n):
        return False
    return None


def _pollard_brent(n: int, budget: int, seed: int = 1) -> Optional[int]:
    """A nontrivial factor of composite odd n, or None if the budget runs out."""
    if n % 2 == 0:
        return 2
    c = seed
    spent = 0
    while spent < budget:
        y, r, q, g = 2, 1, 1, 1
        x = ys = 2
        while g == 1 and spent < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            spent += r
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
        c += 1
    return None


def factorize(x: int, trial_bound: int = TRIAL_BOUND, budget: int = RHO_BUDGET) -> Optional[dict[int, int]]:
    """Prime factorization {p: exponent} of |x|, or None if it cannot be certified.

    Trial division up to ``trial_bound``, then Pollard rho (Brent variant,
    deterministic seeds) with ``budget`` iterations per split.
    """
    x = abs(x)
    if x == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while x % p == 0:
            out[p] = out.get(p, 0) + 1
            x //= p
    # wheel over 6k +- 1
    p, step = 7, 4
    while p <= trial_bound and p * p <= x:
        if x % p == 0:
            while x % p == 0:
                out[p] = out.get(p, 0) + 1
                x //= p
        p += step
        step = 6 - step
    if x == 1:
        return out
    stack = [x]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if m < p * p:
            # no prime factor below p, so anything under p^2 is prime
            out[m] = out.get(m, 0) + 1
            continue
        pr = is_prime(m)
        if pr is None:
            return None
        if pr:
            out[m] = out.get(m, 0) + 1
            continue
        r = is_square(m)
        if r is not None:
            stack.extend((r, r))
            continue
        f = _pollard_brent(m, budget)
        if f is None:
            return None
        stack.extend((f, m // f))
    return dict(sorted(out.items()))


def is_squarefree(x: int, trial_bound: int = TRIAL_BOUND, budget: int = RHO_BUDGET) -> Optional[bool]:
    """True/False when certain, None when factorization exceeded its budget."""
    if x < 1:
        raise ValueError("is_squarefree needs x >= 1")
    f = factorize(x, trial_bound, budget)
    if f is None:
        return None
    return all(e == 1 for e in f.values())


def digit_sum(n: int, p: int) -> int:
    s = 0
    while n:
        n, r = divmod(n, p)
        s += r
    return s


def vp_factorial(n: int, p: int) -> int:
    """Exponent of p in n! (Legendre)."""
    return (n - digit_sum(n, p)) // (p - 1)


def vp_binom(n: int, k: int, p: int) -> int:
    """Exponent of the prime p in C(n, k) for 0 <= k <= n (Kummer)."""
    if not 0 <= k <= n:
        raise ValueError("vp_binom needs 0 <= k <= n")
    return (digit_sum(k, p) + digit_sum(n - k, p) - digit_sum(n, p)) // (p - 1)


def vp(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of 0")
    x = abs(x)
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def divides_binom(m: int, n: int, k: int, factors: Optional[dict[int, int]] = None):
    """Decide whether m divides C(n, k) without forming the binomial.

    Returns (verdict, witness) where verdict is True, False or None (unknown)
    and witness is (p, v_p(m), v_p(C(n,k))) for the first deficient prime.
    """
    if m == 0:
        raise ValueError("divisor 0")
    m = abs(m)
    if m == 1:
        return True, None
    c_is_zero = not 0 <= k <= n
    if c_is_zero:
        return True, None
    if factors is None:
        factors = factorize(m)
    if factors is None:
        # small cases can still be settled directly
        if n <= 20000:
            return math.comb(n, k) % m == 0, None
        return None, None
    for p, e in factors.items():
        v = vp_binom(n, k, p)
        if v < e:
            return False, (p, e, v)
    return True, None


def is_integral(q) -> bool:
    if isinstance(q, int):
        return True
    return Fraction(q).denominator == 1


def parse_int(text: str) -> int:
    """Parse an exact decimal integer: optional leading '-' (or U+2212), digits only."""
    s = text.strip()
    neg = False
    if s[:1] in ("-", "−"):
        neg = True
        s = s[1:]
    if not s or not s.isascii() or not s.isdigit():
        raise ValueError(f"not a decimal integer: {text!r}")
    v = int(s)
    return -v if neg else v


def format_int(x: int) -> str:
    return str(int(x))


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_exact_number(text: str) -> int:
    """Integer from '2500000000000000', '2.5e15' or '2.5*10^15' (must be integral)."""
    s = text.strip().replace("*10^", "e").replace("x10^", "e")
    try:
        return parse_int(s)
    except ValueError:
        pass
    from decimal import Decimal, InvalidOperation
    try:
        d = Decimal(s)
    except InvalidOperation as exc:
        raise ValueError(f"not an exact number: {text!r}") from exc
    q = Fraction(d)
    if q.denominator != 1:
        raise ValueError(f"not an integer: {text!r}")
    return q.numerator
