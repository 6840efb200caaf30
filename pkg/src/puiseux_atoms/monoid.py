"""The Puiseux monoid M generated by a family: membership, divisibility, atoms
and the non-stationary chain of principal ideals.

Soundness over completeness: a ``Member`` answer always carries a certificate
that reconstructs the query exactly, a ``NotMember`` answer is only given for
a reason that holds in the whole monoid, and everything else is ``Unknown``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from . import exactnum
from .exactnum import RatLike, as_rat, factor_int, format_rat, padic_valuation
from .factor import OversizedInstance, Truncation, dp_size_cap, oracle_membership
from .families import (
    DEFAULT_BUDGET,
    PRIME_PAIR,
    Certificate,
    ExplicitFamily,
    GeneratorFamily,
    PrimePairFamily,
    SearchBudget,
    certificate_value,
    generator_value,
)
from .report import FalsificationError, Report, Status


# -- membership outcomes ------------------------------------------------------


@dataclass(frozen=True)
class ValuationObstruction:
    """v_p(q) is below every valuation a sum of generators can reach."""

    prime: int
    valuation: int
    floor: int

    def to_json(self):
        return {"kind": "valuation", "prime": self.prime, "valuation": self.valuation, "floor": self.floor}


@dataclass(frozen=True)
class ValueBound:
    """The candidate difference is negative."""

    difference: Fraction

    def to_json(self):
        return {"kind": "value-bound", "difference": str(self.difference)}


@dataclass(frozen=True)
class ExhaustiveSearch:
    """Every generator up to ``max_index`` was searched; sound for the full
    monoid only when ``covers_family`` is true."""

    max_index: int
    covers_family: bool

    def to_json(self):
        return {"kind": "exhaustive", "max_index": self.max_index, "covers_family": self.covers_family}


Obstruction = Union[ValuationObstruction, ValueBound, ExhaustiveSearch]


@dataclass(frozen=True)
class Member:
    certificate: Certificate
    method: str = "dp"

    def to_json(self):
        return {"outcome": "member", "certificate": self.certificate.to_json(), "method": self.method}


@dataclass(frozen=True)
class NotMember:
    obstruction: Obstruction

    def to_json(self):
        return {"outcome": "not-member", "obstruction": self.obstruction.to_json()}


@dataclass(frozen=True)
class Unknown:
    budget: SearchBudget
    reason: str

    def to_json(self):
        return {"outcome": "unknown", "reason": self.reason, "budget": self.budget.to_json()}


MembershipOutcome = Union[Member, NotMember, Unknown]


@dataclass(frozen=True)
class AtomVerdict:
    """``value`` is True, False or None (undecided under the budget)."""

    value: Optional[bool]
    basis: str
    certificate: Optional[Certificate] = None
    witness: Optional[tuple[Certificate, Certificate]] = None

    def to_json(self):
        out = {"atom": self.value, "basis": self.basis}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.witness is not None:
            out["witness"] = [w.to_json() for w in self.witness]
        return out


class NotInMonoid(ValueError):
    def __init__(self, q, outcome: NotMember):
        super().__init__(f"{format_rat(q)} is not in the monoid")
        self.outcome = outcome


def _split(cert: Certificate) -> tuple[Certificate, Certificate]:
    """Break a certificate of length >= 2 into two nonzero parts."""
    (i, k), *rest = cert.entries
    if rest:
        return Certificate(((i, k),)), Certificate(tuple(rest))
    return Certificate(((i, 1),)), Certificate(((i, k - 1),))


# -- the monoid ---------------------------------------------------------------


@dataclass(frozen=True)
class PuiseuxMonoid:
    family: GeneratorFamily = field(default=PRIME_PAIR)

    def generator(self, i: int) -> Fraction:
        return self.family.value(i)

    def value(self, cert: Certificate) -> Fraction:
        return certificate_value(self.family, cert)

    def valuation_obstruction(self, q: Fraction) -> Optional[ValuationObstruction]:
        """The smallest prime p with v_p(q) below every generator's v_p, if any.

        By the ultrametric inequality a sum of generators has
        v_p >= min(0, min_j v_p(g_j)), so such a q lies outside the whole
        monoid, not merely outside a truncation.
        """
        d = q.denominator
        if d == 1:
            return None
        if isinstance(self.family, ExplicitFamily):
            L = exactnum.lcm_all(g.denominator for g in self.family.generators)
            excess = d // math.gcd(d, L)
            if excess == 1:
                return None
            p = min(factor_int(excess))
            floor = -max((exactnum._int_valuation(g.denominator, p) for g in self.family.generators), default=0)
            return ValuationObstruction(p, padic_valuation(q, p), floor)
        for p in sorted(factor_int(d)):
            vq = padic_valuation(q, p)
            floor = min([padic_valuation(self.family.value(j), p) for j in self.family.indices_with_prime(p)] + [0])
            if vq < floor:
                return ValuationObstruction(p, vq, floor)
        return None

    def _single_generator(self, q: Fraction, budget: SearchBudget) -> Optional[Certificate]:
        # q = m * g_j for the smallest admissible j; this is the certificate the
        # iterative-deepening DP would return first, computed without the DP
        d = q.denominator
        if d == 1:
            candidates = [1]
        else:
            primes = sorted(factor_int(d))
            table = exactnum.prime_table()
            if len(primes) == 1:
                k = table.index_of(primes[0])
                candidates = [j for j in (k - 2, k) if j >= 1] if k else []
            elif len(primes) == 2:
                k, k2 = table.index_of(primes[0]), table.index_of(primes[1])
                candidates = [k] if k and k2 == k + 2 else []
            else:
                candidates = []
        for j in candidates:
            if j > budget.max_index:
                continue
            m = q / self.family.value(j)
            if m.denominator == 1:
                return Certificate(((j, m.numerator),))
        return None

    def membership(self, q: RatLike, budget: SearchBudget = DEFAULT_BUDGET) -> MembershipOutcome:
        """Decide q in M as far as the budget allows.

        Order: zero; valuation obstruction; (prime-pair family) single
        generator multiple; then iterative deepening over truncations
        <g_1..g_n>, n = 1..max_index, with the exact DP oracle.
        """
        q = as_rat(q)
        if q == 0:
            return Member(Certificate(), method="zero")
        obs = self.valuation_obstruction(q)
        if obs is not None:
            return NotMember(obs)
        if isinstance(self.family, PrimePairFamily):
            cert = self._single_generator(q, budget)
            if cert is not None:
                return Member(cert, method="single-generator")

        family = self.family
        top = budget.max_index if family.size is None else min(budget.max_index, family.size)
        cap = dp_size_cap()
        D = 1
        gens: list[Fraction] = []
        for n in range(1, top + 1):
            g = family.value(n)
            gens.append(g)
            D = math.lcm(D, g.denominator)
            scaled = q * D
            if scaled.denominator != 1:
                continue
            if scaled.numerator > cap:
                return Unknown(budget, f"scaled target {scaled.numerator} at n={n} exceeds DP cap {cap}")
            trunc = Truncation(family, n, D, tuple(int(h * D) for h in gens))
            ans = oracle_membership(trunc, q, cap)
            if ans.member:
                return Member(ans.certificate, method=f"dp(n={n})")
        if family.size is not None and family.size <= budget.max_index:
            return NotMember(ExhaustiveSearch(family.size, covers_family=True))
        return Unknown(budget, f"no certificate using generators 1..{top}")

    def contains(self, q: RatLike, budget: SearchBudget = DEFAULT_BUDGET) -> Optional[bool]:
        out = self.membership(q, budget)
        if isinstance(out, Member):
            return True
        if isinstance(out, NotMember):
            return False
        return None

    def divides(self, a: RatLike, b: RatLike, budget: SearchBudget = DEFAULT_BUDGET) -> MembershipOutcome:
        """Is b in the principal ideal (a) = a + M?  Decided on b - a."""
        diff = as_rat(b) - as_rat(a)
        if diff < 0:
            return NotMember(ValueBound(diff))
        return self.membership(diff, budget)

    def is_atom(self, q: RatLike, budget: SearchBudget = DEFAULT_BUDGET) -> AtomVerdict:
        """Decide whether q is an atom (irreducible) of M.

        ``False`` comes with a split q = a + b into two nonzero members.
        ``True`` is sound for the whole monoid when the basis is
        ``"valuation"`` or ``"exhaustive"``; ``"budget-relative"`` means only
        generators up to ``budget.max_index`` were searched.
        """
        q = as_rat(q)
        if q == 0:
            raise ValueError("0 is the unit of M, neither an atom nor decomposable")
        out = self.membership(q, budget)
        if isinstance(out, NotMember):
            raise NotInMonoid(q, out)
        if isinstance(out, Unknown):
            return AtomVerdict(None, "membership-unknown")
        cert = out.certificate
        if cert.length >= 2:
            return AtomVerdict(False, "split", cert, _split(cert))
        (i, _), = cert.entries
        if isinstance(self.family, PrimePairFamily):
            trace = is_atom_generator(self.family, i)
            return AtomVerdict(trace.verdict, "valuation", cert)

        from .factor import factorizations

        n = min(budget.max_index, self.family.size)
        trunc = Truncation.of(self.family, n)
        try:
            fs = factorizations(trunc, q)
        except OversizedInstance:
            return AtomVerdict(None, "oversized", cert)
        for c in fs:
            if c.length >= 2:
                return AtomVerdict(False, "split", c, _split(c))
        if not fs.complete:
            return AtomVerdict(None, "enumeration-capped", cert)
        basis = "exhaustive" if n == self.family.size else "budget-relative"
        return AtomVerdict(True, basis, cert)


THE_MONOID = PuiseuxMonoid(PRIME_PAIR)


# -- atoms of the prime-pair family --------------------------------------------


@dataclass(frozen=True)
class AtomTrace:
    index: int
    value: Fraction
    prime: int
    verdict: bool
    checks: dict
    denominator_hits: tuple[int, ...]
    window: int

    def to_json(self):
        return {
            "index": self.index,
            "value": format_rat(self.value),
            "prime": self.prime,
            "atom": self.verdict,
            "checks": self.checks,
            "denominator_hits": list(self.denominator_hits),
            "window": self.window,
        }


def is_atom_generator(family: GeneratorFamily, i: int, window: int = 4) -> AtomTrace:
    """Check that g_i = 1/(p_i p_{i+2}) is an atom, recording the argument.

    If g_i = a + b with a, b nonzero, both are smaller than g_i, so neither
    uses g_i itself nor any g_j, j < i (those exceed g_i): only indices > i
    occur.  None of those has p_i in its denominator, since p_i = p_j or
    p_i = p_{j+2} forces j <= i.  A sum of them therefore has v_{p_i} >= 0,
    while v_{p_i}(g_i) = -1.

    The trace records each step as a concrete check: the prime table is
    prime and strictly increasing up to index i + 2 + window, every earlier
    generator is larger, and among indices 1..i + window only i - 2 and i put
    p_i in the denominator.
    """
    if not isinstance(family, PrimePairFamily):
        raise TypeError("is_atom_generator applies to the prime-pair family; use PuiseuxMonoid.is_atom")
    if i < 1:
        raise ValueError("generator index must be >= 1")
    top = i + 2 + window
    table = [exactnum.nth_prime(k) for k in range(1, top + 1)]
    primes_ok = all(exactnum.is_prime(p) for p in table) and all(a < b for a, b in zip(table, table[1:]))
    p = table[i - 1]
    g = family.value(i)
    predecessors_larger = all(family.value(j) > g for j in range(1, i))
    own = padic_valuation(g, p) == -1 if exactnum.is_prime(p) else False
    hits = tuple(j for j in range(1, i + window + 1) if family.value(j).denominator % p == 0)
    later_hits = [j for j in hits if j > i]
    hits_ok = i in hits and set(hits) <= {i - 2, i}
    checks = {
        "prime_table_increasing": primes_ok,
        "earlier_generators_larger": predecessors_larger,
        "own_valuation_is_minus_one": own,
        "no_later_generator_has_prime": not later_hits and hits_ok,
    }
    return AtomTrace(i, g, p, all(checks.values()), checks, hits, window)


# -- the chain (c_1) < (c_2) < ... ---------------------------------------------


def chain_element(i: int) -> Fraction:
    """c_i = 1/p_i + 1/p_{i+1}."""
    if i < 1:
        raise ValueError("chain index must be >= 1")
    return Fraction(1, exactnum.nth_prime(i)) + Fraction(1, exactnum.nth_prime(i + 1))


@dataclass(frozen=True)
class ChainLinkReport:
    index: int
    c_i: Fraction
    c_next: Fraction
    inclusion_certificate: Certificate
    strict: bool
    member_certificate: Certificate
    member_certificate_next: Certificate
    reverse: MembershipOutcome

    def to_json(self):
        return {
            "index": self.index,
            "c_i": format_rat(self.c_i),
            "c_next": format_rat(self.c_next),
            "inclusion_certificate": self.inclusion_certificate.to_json(),
            "strict": self.strict,
            "member_certificate": self.member_certificate.to_json(),
            "member_certificate_next": self.member_certificate_next.to_json(),
            "reverse": self.reverse.to_json(),
        }


def verify_chain_link(i: int, monoid: PuiseuxMonoid = THE_MONOID) -> ChainLinkReport:
    """Certify (c_i) < (c_{i+1}) in the prime-pair monoid.

    c_i = c_{i+1} + (p_{i+2} - p_i) g_i gives the inclusion; c_{i+1} < c_i
    rules out the reverse one.  Raises FalsificationError if any exact check
    fails.
    """
    family = monoid.family
    p = {k: exactnum.nth_prime(k) for k in range(i, i + 5)}
    c_i, c_next = chain_element(i), chain_element(i + 1)
    mem = Certificate.of({i: p[i + 2], i + 1: p[i + 3]})
    mem_next = Certificate.of({i + 1: p[i + 3], i + 2: p[i + 4]})
    inc = Certificate.of({i: p[i + 2] - p[i]})
    problems = []
    if certificate_value(family, mem) != c_i:
        problems.append("membership certificate of c_i")
    if certificate_value(family, mem_next) != c_next:
        problems.append("membership certificate of c_{i+1}")
    step = certificate_value(family, inc)
    if c_next + step != c_i or step != Fraction(p[i + 2] - p[i], p[i] * p[i + 2]):
        problems.append("inclusion identity")
    reverse = monoid.divides(c_i, c_next)
    strict = isinstance(reverse, NotMember) and isinstance(reverse.obstruction, ValueBound)
    if not strict:
        problems.append("strictness")
    if problems:
        raise FalsificationError(
            f"chain link {i} failed: {', '.join(problems)}",
            {"index": i, "c_i": format_rat(c_i), "c_next": format_rat(c_next), "failed": problems},
        )
    return ChainLinkReport(i, c_i, c_next, inc, strict, mem, mem_next, reverse)


CHAIN_ANCHOR = "non-stationary chain of principal ideals (1/p_i + 1/p_{i+1}) in M = <1/(p_i p_{i+2})>"


def accp_witness(n: int) -> Report:
    """Certify n strict links (c_1) < ... < (c_{n+1}).

    This witnesses non-stationarity up to length n only; that the chain
    never stabilizes is the general statement, not something a finite
    computation establishes.
    """
    if n < 1:
        raise ValueError("need at least one link")
    claim = f"(c_1) < (c_2) < ... < (c_{n + 1}) is a strictly increasing chain of principal ideals of M"
    try:
        links = [verify_chain_link(i) for i in range(1, n + 1)]
    except FalsificationError as exc:
        return Report(claim, Status.FALSIFIED, CHAIN_ANCHOR, {"counterexample": exc.payload, "message": str(exc)})
    return Report(
        claim,
        Status.VERIFIED,
        CHAIN_ANCHOR,
        {
            "strict_links": sum(l.strict for l in links),
            "note": f"{n} strict links witness non-stationarity up to length {n}; "
            "that the infinite chain never stabilizes follows from the general argument, not from this computation",
            "links": [l.to_json() for l in links],
        },
    )
