"""Exact rational helpers, the shared prime table and p-adic valuations.

Monoid elements and exponents are :class:`fractions.Fraction` values, which
are always kept in lowest terms with a positive denominator.  Signed
fractions appear only as intermediate differences; everything that is meant
to live in the monoid goes through :func:`as_rat`.
"""

from __future__ import annotations

import bisect
import contextlib
import math
import re
import threading
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

Rat = Fraction

RatLike = Union[Fraction, int, str]

_RAT_RE = re.compile(r"^\s*(\d+)\s*(?:/\s*(\d+)\s*)?$")


def as_rat(value: RatLike) -> Fraction:
    """Coerce *value* to a nonnegative Fraction.

    Strings go through :func:`parse_rat`; floats are refused because they
    cannot be represented exactly in general.
    """
    if isinstance(value, str):
        return parse_rat(value)
    if isinstance(value, float) or isinstance(value, bool):
        raise TypeError(f"refusing inexact or boolean value {value!r}")
    q = Fraction(value)
    if q < 0:
        raise ValueError(f"negative value {q} is not an element of Q_+")
    return q


def parse_rat(text: str) -> Fraction:
    """Parse ``"num/den"`` or ``"num"`` into a reduced nonnegative Fraction."""
    m = _RAT_RE.match(text)
    if m is None:
        raise ValueError(f"not a nonnegative rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rat(q: Fraction) -> str:
    """Inverse of :func:`parse_rat`; integers are written without ``/1``."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def lcm_all(values) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v)
    return out


def _simple_sieve(limit: int) -> list[int]:
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i, f in enumerate(flags) if f]


class PrimeSeq:
    """Append-only, lock-protected table of the primes, 1-indexed.

    The table grows by sieving successive segments.  The sieve for a new
    segment is seeded from a fresh small sieve up to its square root, so an
    override table installed by :func:`substituted_primes` affects lookups
    but never the arithmetic used to extend it.
    """

    def __init__(self, seed: Optional[Sequence[int]] = None):
        self._cache: list[int] = list(seed) if seed is not None else [2, 3, 5, 7]
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._cache)

    def _extend_locked(self) -> None:
        lo = self._cache[-1] + 1
        hi = max(2 * lo, lo + 4096)
        base = _simple_sieve(math.isqrt(hi) + 1)
        seg = bytearray([1]) * (hi - lo)
        for p in base:
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start >= hi:
                continue
            seg[start - lo :: p] = bytearray(len(range(start, hi, p)))
        self._cache.extend(lo + k for k, f in enumerate(seg) if f and lo + k >= 2)

    def nth(self, i: int) -> int:
        if i < 1:
            raise ValueError(f"prime index must be >= 1, got {i}")
        cache = self._cache
        if i <= len(cache):
            return cache[i - 1]
        with self._lock:
            while i > len(self._cache):
                self._extend_locked()
            return self._cache[i - 1]

    def upto(self, bound: int) -> list[int]:
        """All table entries <= bound (extending as needed)."""
        with self._lock:
            while self._cache[-1] < bound:
                self._extend_locked()
            k = bisect.bisect_right(self._cache, bound)
            return self._cache[:k]

    def index_of(self, p: int) -> Optional[int]:
        """1-based position of *p* in the table, or None if absent."""
        table = self.upto(p)
        k = bisect.bisect_left(table, p)
        if k < len(table) and table[k] == p:
            return k + 1
        # an override table need not be sorted
        try:
            return table.index(p) + 1
        except ValueError:
            return None


_primes = PrimeSeq()


def prime_table() -> PrimeSeq:
    return _primes


def nth_prime(i: int) -> int:
    """Return the i-th prime, ``nth_prime(1) == 2``."""
    return _primes.nth(i)


@contextlib.contextmanager
def substituted_primes(table: Sequence[int]) -> Iterator[PrimeSeq]:
    """Temporarily replace the shared prime table (negative-control hook)."""
    global _primes
    saved = _primes
    _primes = PrimeSeq(seed=table)
    try:
        yield _primes
    finally:
        _primes = saved


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def factor_int(n: int) -> dict[int, int]:
    """Trial-division factorization of a positive integer."""
    if n < 1:
        raise ValueError("factor_int needs a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _int_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def padic_valuation(q: RatLike, p: int) -> int:
    """Exponent of the prime *p* in *q*; negative when p divides the denominator."""
    q = Fraction(q) if not isinstance(q, str) else parse_rat(q)
    if q == 0:
        raise ValueError("the valuation of 0 is not defined")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = abs(q)
    return _int_valuation(q.numerator, p) - _int_valuation(q.denominator, p)


def largest_denominator_prime(q: RatLike) -> Optional[int]:
    """Largest prime dividing the reduced denominator of *q*, or None."""
    q = Fraction(q) if not isinstance(q, str) else parse_rat(q)
    if q.denominator == 1:
        return None
    return max(factor_int(q.denominator))
