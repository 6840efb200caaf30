"""Brute-force ground truth over finitely generated truncations <g_1, ..., g_n>.

Scaling every generator by the common denominator D turns membership into
an integer coin problem: is ``q*D`` a nonnegative combination of the
integers ``g_i*D``?  :func:`oracle_membership` answers that with a
reachability table; :func:`factorizations` enumerates all count vectors by
plain depth-first search and never consults the table, so the two can be
checked against each other.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional

import numpy as np

from .exactnum import RatLike, as_rat, lcm_all
from .families import Certificate, GeneratorFamily

DEFAULT_MAX_DP = 10**7
MAX_DP_ENV = "PUISEUX_ATOMS_MAX_DP"


class OversizedInstance(Exception):
    """The scaled target exceeds the DP size cap; no answer was attempted."""

    def __init__(self, size: int, cap: int):
        super().__init__(f"scaled target {size} exceeds size cap {cap}")
        self.size = size
        self.cap = cap


def dp_size_cap() -> int:
    raw = os.environ.get(MAX_DP_ENV)
    return int(raw) if raw else DEFAULT_MAX_DP


@dataclass(frozen=True)
class Truncation:
    family: GeneratorFamily
    n: int
    D: int
    scaled_generators: tuple[int, ...]

    @classmethod
    def of(cls, family: GeneratorFamily, n: int) -> "Truncation":
        if n < 1:
            raise ValueError("a truncation keeps at least one generator")
        if family.size is not None and n > family.size:
            raise ValueError(f"family has only {family.size} generators")
        gens = [family.value(i) for i in range(1, n + 1)]
        D = lcm_all(g.denominator for g in gens)
        return cls(family, n, D, tuple(int(g * D) for g in gens))

    def scale(self, q: Fraction) -> Optional[int]:
        """q*D as an int, or None when it is not integral."""
        s = q * self.D
        return s.numerator if s.denominator == 1 else None


class OracleAnswer(NamedTuple):
    member: bool
    certificate: Optional[Certificate]


def _checked_target(trunc: Truncation, q: RatLike, cap: Optional[int]) -> Optional[int]:
    q = as_rat(q)
    x = trunc.scale(q)
    if x is None:
        return None
    cap = dp_size_cap() if cap is None else cap
    if x > cap:
        raise OversizedInstance(x, cap)
    return x


def _suffix_tables(coins: tuple[int, ...], target: int) -> list[np.ndarray]:
    # tables[j][x]: x is a combination of coins[j:]
    n = len(coins)
    tables: list[np.ndarray] = [None] * (n + 1)  # type: ignore[list-item]
    last = np.zeros(target + 1, dtype=bool)
    last[0] = True
    tables[n] = last
    for j in range(n - 1, -1, -1):
        c = coins[j]
        prev = tables[j + 1]
        if c > target:
            tables[j] = prev
            continue
        # closing under +c, +2c, +4c, ... reaches every count of coin c
        buf = prev.copy()
        shift = c
        while shift <= target:
            buf[shift:] |= buf[:-shift]
            shift *= 2
        tables[j] = buf
    return tables


def oracle_membership(trunc: Truncation, q: RatLike, cap: Optional[int] = None) -> OracleAnswer:
    """Decide q in <g_1..g_n> exactly; on success return one certificate.

    The certificate has the lexicographically smallest count vector
    (k_1, k_2, ...): each count is chosen as small as possible, lowest index
    first, subject to the remainder staying representable.
    """
    x = _checked_target(trunc, q, cap)
    if x is None:
        return OracleAnswer(False, None)
    if x == 0:
        return OracleAnswer(True, Certificate())
    coins = trunc.scaled_generators
    tables = _suffix_tables(coins, x)
    if not tables[0][x]:
        return OracleAnswer(False, None)
    counts = []
    for j, c in enumerate(coins):
        nxt = tables[j + 1]
        k = int(np.argmax(nxt[x::-c]))
        counts.append(k)
        x -= k * c
    assert x == 0
    return OracleAnswer(True, Certificate.from_counts(counts))


def reachable_table(trunc: Truncation, bound: int) -> np.ndarray:
    """Boolean array r with r[x] true iff x/D lies in the truncation, x <= bound."""
    return _suffix_tables(trunc.scaled_generators, bound)[0]


@dataclass(frozen=True)
class FactorizationSet:
    target: Fraction
    certificates: tuple[Certificate, ...]
    complete: bool

    def __len__(self):
        return len(self.certificates)

    def __iter__(self):
        return iter(self.certificates)

    def lengths(self) -> frozenset[int]:
        return frozenset(c.length for c in self.certificates)


def _enumerate(coins: tuple[int, ...], x: int) -> Iterator[tuple[int, ...]]:
    n = len(coins)
    tail_gcd = [0] * (n + 1)
    for j in range(n - 1, -1, -1):
        tail_gcd[j] = math.gcd(coins[j], tail_gcd[j + 1])
    counts = [0] * n

    def rec(j: int, rest: int):
        c = coins[j]
        if j == n - 1:
            if rest % c == 0:
                counts[j] = rest // c
                yield tuple(counts)
            return
        g = tail_gcd[j + 1]
        for k in range(rest // c + 1):
            r = rest - k * c
            if r % g == 0:
                counts[j] = k
                yield from rec(j + 1, r)
        counts[j] = 0

    if x % tail_gcd[0] == 0:
        yield from rec(0, x)


def factorizations(trunc: Truncation, q: RatLike, cap: int = 10_000) -> FactorizationSet:
    """All factorizations of q in the truncation, in lexicographic order of counts.

    At most *cap* certificates are returned; ``complete`` says whether the
    search space was exhausted.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    q = as_rat(q)
    x = _checked_target(trunc, q, None)
    if x is None:
        return FactorizationSet(q, (), True)
    found = []
    complete = True
    for vec in _enumerate(trunc.scaled_generators, x):
        if len(found) == cap:
            complete = False
            break
        found.append(Certificate.from_counts(vec))
    return FactorizationSet(q, tuple(found), complete)


def length_set(trunc: Truncation, q: RatLike, cap: int = 100_000) -> frozenset[int]:
    """Lengths of all factorizations of q; empty when q is not in the truncation."""
    fs = factorizations(trunc, q, cap)
    if not fs.complete:
        raise RuntimeError(f"more than {cap} factorizations; raise cap to get the full length set")
    return fs.lengths()
