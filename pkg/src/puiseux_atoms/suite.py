"""Self-contained verification checks, each returning a :class:`Report`.

``run_all`` is what ``puiseux-atoms selftest`` executes.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Optional

from . import exactnum
from .algebra import (
    QQ,
    Field,
    MPoly,
    PrimeField,
    Quotient,
    SupportOutsideM,
    degree,
    divide_exact,
    format_poly,
    is_unit,
    lift_chain,
    search_monomial_factorizations,
)
from .exactnum import format_rat
from .factor import OversizedInstance, Truncation, factorizations, length_set, oracle_membership
from .families import PRIME_PAIR, Certificate, SearchBudget, certificate_value
from .monoid import (
    THE_MONOID,
    Member,
    NotMember,
    Unknown,
    ValuationObstruction,
    ValueBound,
    accp_witness,
    chain_element,
    is_atom_generator,
)
from .report import FalsificationError, Report, Status, combine

ATOM_ANCHOR = "each generator 1/(p_i p_{i+2}) of M is an atom"
CHAIN_ANCHOR = "(1/p_i + 1/p_{i+1}) strictly increasing: M is not ACCP"
LIFT_ANCHOR = "F[X;M] is ACCP iff M is ACCP; chains lift to monomials X^{a_i}"


def _trial_division_primes(n: int) -> list[int]:
    out, k = [], 1
    while len(out) < n:
        k += 1
        if all(k % p for p in out if p * p <= k):
            out.append(k)
    return out


def check_prime_table(n: int = 1000) -> Report:
    expected = _trial_division_primes(n)
    bad = [(i, exactnum.nth_prime(i), p) for i, p in enumerate(expected, 1) if exactnum.nth_prime(i) != p]
    claim = f"shared prime table agrees with trial division for i <= {n}"
    if bad:
        return Report(claim, Status.FALSIFIED, "p_1 = 2, p_2 = 3, p_3 = 5, ...",
                      {"mismatches": [{"index": i, "table": t, "expected": p} for i, t, p in bad[:10]]})
    return Report(claim, Status.VERIFIED, "p_1 = 2, p_2 = 3, p_3 = 5, ...", {"checked": n})


def check_atoms(n: int = 200) -> Report:
    traces = [is_atom_generator(PRIME_PAIR, i) for i in range(1, n + 1)]
    failed = [t.to_json() for t in traces if not t.verdict]
    claim = f"g_i = 1/(p_i p_(i+2)) is an atom of M for i = 1..{n}"
    if failed:
        return Report(claim, Status.FALSIFIED, ATOM_ANCHOR, {"failed": failed})
    return Report(claim, Status.VERIFIED, ATOM_ANCHOR, {"atoms": n, "traces": [t.to_json() for t in traces]})


def check_chain(n: int = 200, budget: SearchBudget = SearchBudget()) -> Report:
    """Chain identity plus divides() in both directions for i = 1..n."""
    claim = f"c_i = c_(i+1) + (p_(i+2) - p_i) g_i and (c_i) < (c_(i+1)) for i = 1..{n}"
    bad, unknown = [], []
    for i in range(1, n + 1):
        ci, cj = chain_element(i), chain_element(i + 1)
        step = (exactnum.nth_prime(i + 2) - exactnum.nth_prime(i)) * PRIME_PAIR.value(i)
        if ci != cj + step or not cj < ci:
            bad.append({"index": i, "reason": "identity"})
            continue
        fwd = THE_MONOID.divides(cj, ci, budget)
        rev = THE_MONOID.divides(ci, cj, budget)
        if isinstance(fwd, Unknown):
            unknown.append(i)
        elif not isinstance(fwd, Member) or certificate_value(PRIME_PAIR, fwd.certificate) != ci - cj:
            bad.append({"index": i, "reason": "forward divisibility", "outcome": fwd.to_json()})
        if not (isinstance(rev, NotMember) and isinstance(rev.obstruction, ValueBound)):
            bad.append({"index": i, "reason": "reverse divisibility", "outcome": rev.to_json()})
    if bad:
        return Report(claim, Status.FALSIFIED, CHAIN_ANCHOR, {"failed": bad}, budget.to_json())
    if unknown:
        return Report(claim, Status.UNKNOWN, CHAIN_ANCHOR, {"undecided_links": unknown}, budget.to_json())
    witness = accp_witness(n)
    if witness.status is not Status.VERIFIED:
        return Report(claim, witness.status, CHAIN_ANCHOR, witness.witnesses or {"accp_witness": "failed"}, budget.to_json())
    return Report(claim, Status.VERIFIED, CHAIN_ANCHOR, {"strict_links": n}, budget.to_json())


def check_oracle_agreement(budget: SearchBudget = SearchBudget(max_index=4), n: int = 4) -> Report:
    """membership vs the truncation-n oracle on every q = k/D, 0 <= k <= D."""
    trunc = Truncation.of(PRIME_PAIR, n)
    D = trunc.D
    claim = f"membership agrees with the DP oracle on all k/{D}, 0 <= k <= {D}"
    disagree, undecided, members = [], 0, 0
    for k in range(D + 1):
        q = Fraction(k, D)
        truth = oracle_membership(trunc, q).member
        out = THE_MONOID.membership(q, budget)
        if isinstance(out, Member):
            members += 1
            if not truth or certificate_value(PRIME_PAIR, out.certificate) != q:
                disagree.append(format_rat(q))
        elif isinstance(out, NotMember):
            if truth:
                disagree.append(format_rat(q))
        elif truth:
            undecided += 1
    if disagree:
        return Report(claim, Status.FALSIFIED, "finite sums of generators", {"disagreements": disagree[:20]}, budget.to_json())
    if undecided:
        return Report(claim, Status.UNKNOWN, "finite sums of generators", {"undecided_members": undecided}, budget.to_json())
    return Report(claim, Status.VERIFIED, "finite sums of generators", {"values": D + 1, "members": members}, budget.to_json())


def check_nonunique_factorization() -> Report:
    trunc = Truncation.of(PRIME_PAIR, 3)
    fs = factorizations(trunc, Fraction(1, 5))
    got = {c for c in fs}
    want = {Certificate.of({1: 2}), Certificate.of({3: 11})}
    lengths_a = length_set(trunc, Fraction(1, 5))
    lengths_b = length_set(trunc, Fraction(3, 10))
    ok = fs.complete and got == want and lengths_a == {2, 11} and lengths_b == {3, 12}
    payload = {
        "factorizations_1/5": [c.to_json() for c in fs],
        "lengths_1/5": sorted(lengths_a),
        "lengths_3/10": sorted(lengths_b),
    }
    return Report("M is atomic but not factorial: 1/5 has two factorizations in <g_1, g_2, g_3>",
                  Status.VERIFIED if ok else Status.FALSIFIED, "a finite sum of atoms", payload)


def check_valuation_rejections(values=("1/4", "1/8", "1/9"), max_n: int = 8) -> Report:
    claim = "1/4, 1/8, 1/9 are outside M (valuation obstruction), and every truncation n <= 8 rejects them"
    rows, ok = [], True
    for s in values:
        q = exactnum.parse_rat(s)
        out = THE_MONOID.membership(q)
        oracle = [oracle_membership(Truncation.of(PRIME_PAIR, n), q).member for n in range(1, max_n + 1)]
        good = isinstance(out, NotMember) and isinstance(out.obstruction, ValuationObstruction) and not any(oracle)
        ok &= good
        rows.append({"q": s, "outcome": out.to_json(), "oracle_rejects_all": not any(oracle)})
    return Report(claim, Status.VERIFIED if ok else Status.FALSIFIED, "denominator argument", {"queries": rows})


def coefficient_pool(field: Field) -> list:
    if isinstance(field, PrimeField):
        return [c for c in range(1, field.p)]
    return [Fraction(1), Fraction(-1), Fraction(2), Fraction(-3), Fraction(1, 2), Fraction(5, 7)]


def certified_exponents(rng: random.Random, count: int, max_index: int = 4, max_count: int = 3):
    """Random elements of M together with the certificates that built them."""
    out = []
    for _ in range(count):
        cert = Certificate.of({i: rng.randint(0, max_count) for i in range(1, max_index + 1)})
        out.append((certificate_value(PRIME_PAIR, cert), cert))
    return out


def random_poly(rng: random.Random, field: Field, max_terms: int = 4) -> MPoly:
    pool = coefficient_pool(field)
    while True:
        size = rng.randint(1, max_terms)
        terms = [(e, rng.choice(pool)) for e, _ in certified_exponents(rng, size)]
        f = MPoly(terms, field)
        if not f.is_zero():
            return f


def check_algebra_roundtrip(pairs: int = 1000, seed: int = 20240601, field: Field = QQ,
                            budget: SearchBudget = SearchBudget()) -> Report:
    rng = random.Random(seed)
    claim = f"divide_exact(f*g, g) = f and deg(f*g) = deg f + deg g on {pairs} seeded pairs over {field.name}"
    failures, undecided = [], 0
    for t in range(pairs):
        f, g = random_poly(rng, field), random_poly(rng, field)
        fg = f * g
        if fg.is_zero() or degree(fg) != degree(f) + degree(g):
            failures.append({"pair": t, "f": format_poly(f), "g": format_poly(g), "reason": "degree"})
            continue
        out = divide_exact(fg, g, budget)
        if isinstance(out, SupportOutsideM) and out.undecided:
            undecided += 1
        elif not isinstance(out, Quotient) or out.quotient != f:
            failures.append({"pair": t, "f": format_poly(f), "g": format_poly(g), "outcome": out.to_json()})
    if failures:
        return Report(claim, Status.FALSIFIED, "F[X;M] is an integral domain", {"failures": failures[:10]}, budget.to_json())
    if undecided:
        return Report(claim, Status.UNKNOWN, "F[X;M] is an integral domain", {"undecided": undecided}, budget.to_json())
    return Report(claim, Status.VERIFIED, "F[X;M] is an integral domain", {"pairs": pairs, "seed": seed}, budget.to_json())


def check_lifted_chain(n: int = 50, field: Field = QQ, budget: SearchBudget = SearchBudget()) -> Report:
    claim = f"{n} strict links in M lift to {n} strict links X^(c_i) in F[X;M] over {field.name}"
    elements = [chain_element(i) for i in range(1, n + 2)]
    monoid_side = accp_witness(n)
    try:
        lifted = lift_chain(elements, budget, field)
    except FalsificationError as exc:
        return Report(claim, Status.FALSIFIED, LIFT_ANCHOR, {"counterexample": exc.payload}, budget.to_json())
    if lifted.status is Status.UNKNOWN:
        return Report(claim, Status.UNKNOWN, LIFT_ANCHOR, lifted.to_json(), budget.to_json())
    bad = []
    for i, link in enumerate(lifted.links, 1):
        h = link.outcome.quotient
        expected = (exactnum.nth_prime(i + 2) - exactnum.nth_prime(i)) * PRIME_PAIR.value(i)
        if not link.strict or is_unit(h) or link.beta != expected:
            bad.append(i)
    status = combine([monoid_side.status, Status.FALSIFIED if bad else Status.VERIFIED])
    if monoid_side.status is Status.VERIFIED and lifted.strict_links != n:
        status = Status.FALSIFIED
    payload = {
        "monoid_strict_links": monoid_side.witnesses.get("strict_links") if isinstance(monoid_side.witnesses, dict) else None,
        "algebra": lifted.to_json(),
    }
    if bad:
        payload["bad_links"] = bad
    return Report(claim, status, LIFT_ANCHOR, payload, budget.to_json())


def check_monomial_atoms(n: int = 6, field: Field = QQ, budget: SearchBudget = SearchBudget()) -> Report:
    claim = f"bounded searches find no non-unit factorization of X^(g_i), i <= {n}, over {field.name}"
    results = [search_monomial_factorizations(i, field, budget=budget) for i in range(1, n + 1)]
    found = [r.to_json() for r in results if r.found]
    if found:
        return Report(claim, Status.FALSIFIED, ATOM_ANCHOR, {"factorizations": found}, budget.to_json())
    return Report(claim, Status.VERIFIED, ATOM_ANCHOR, {"searches": [r.to_json() for r in results]}, budget.to_json())


def run_all(budget: SearchBudget = SearchBudget(), field: Field = QQ,
            progress: Optional[Callable[[Report], None]] = None) -> Report:
    """Every check, in a fixed order, with the algebra checks repeated over GF(5)."""
    small = SearchBudget(max_index=min(4, budget.max_index), notes=budget.notes)
    gf5 = PrimeField(5)
    steps = [
        ("prime-table", lambda: check_prime_table()),
        ("atoms", lambda: check_atoms(200)),
        ("chain", lambda: check_chain(200, budget)),
        ("oracle-agreement", lambda: check_oracle_agreement(small)),
        ("non-unique-factorization", check_nonunique_factorization),
        ("valuation-rejections", check_valuation_rejections),
        ("algebra-roundtrip", lambda: check_algebra_roundtrip(field=field, budget=budget)),
        ("lifted-chain", lambda: check_lifted_chain(50, field, budget)),
        ("monomial-atoms", lambda: check_monomial_atoms(6, field, budget)),
        ("algebra-roundtrip-fp5", lambda: check_algebra_roundtrip(field=gf5, budget=budget)),
        ("lifted-chain-fp5", lambda: check_lifted_chain(50, gf5, budget)),
        ("monomial-atoms-fp5", lambda: check_monomial_atoms(6, gf5, budget)),
    ]
    results = {}
    for name, fn in steps:
        try:
            rep = fn()
        except OversizedInstance as exc:
            rep = Report(name, Status.UNKNOWN, "resource refusal", {"oversized": str(exc)}, budget.to_json())
        except Exception as exc:  # a crashing check is a failed check
            rep = Report(name, Status.FALSIFIED, "check raised", {"error": repr(exc)}, budget.to_json())
        results[name] = rep.to_dict()
        if progress is not None:
            progress(rep)
    status = combine(Status(r["status"]) for r in results.values())
    return Report("all verification suites pass", status, "F[X;M] is atomic but not ACCP", results, budget.to_json())
