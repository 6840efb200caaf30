from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from puiseux_atoms import exactnum
from puiseux_atoms.factor import Truncation, oracle_membership
from puiseux_atoms.families import PRIME_PAIR, Certificate, ExplicitFamily, SearchBudget, certificate_value
from puiseux_atoms.monoid import (
    THE_MONOID,
    ExhaustiveSearch,
    Member,
    NotInMonoid,
    NotMember,
    PuiseuxMonoid,
    Unknown,
    ValuationObstruction,
    ValueBound,
    accp_witness,
    chain_element,
    is_atom_generator,
    verify_chain_link,
)
from puiseux_atoms.report import Status

M = THE_MONOID


# -- membership ------------------------------------------------------------------


def test_membership_examples():
    assert M.membership(Fraction(5, 6)) == Member(Certificate.of({1: 5, 2: 7}), method="dp(n=2)")
    out = M.membership(Fraction(1, 4))
    assert isinstance(out, NotMember) and out.obstruction == ValuationObstruction(2, -2, -1)
    assert M.membership(Fraction(1, 10)).certificate == Certificate.of({1: 1})
    assert M.membership(0).certificate == Certificate()


def test_unknown_echoes_budget():
    budget = SearchBudget(max_index=3, notes="tiny")
    out = M.membership(Fraction(1, 6), budget)
    assert isinstance(out, Unknown) and out.budget == budget


def test_single_generator_fast_path_matches_deepening():
    # below the DP cap both routes are available; they must agree
    for q in [Fraction(3, 10), Fraction(4, 21), Fraction(6, 55), Fraction(1, 7), Fraction(2), Fraction(1, 2)]:
        fast = M.membership(q)
        slow = None
        for n in range(1, 5):
            ans = oracle_membership(Truncation.of(PRIME_PAIR, n), q)
            if ans.member:
                slow = ans.certificate
                break
        assert fast.certificate == slow


def test_far_generator_multiple_needs_budget():
    q = 3 * PRIME_PAIR.value(150)
    assert M.membership(q, SearchBudget(max_index=150)).certificate == Certificate.of({150: 3})
    assert isinstance(M.membership(q, SearchBudget(max_index=149)), Unknown)


def test_divides_examples():
    assert M.divides(Fraction(8, 15), Fraction(5, 6)).certificate == Certificate.of({1: 3})
    out = M.divides(Fraction(5, 6), Fraction(8, 15))
    assert isinstance(out, NotMember) and isinstance(out.obstruction, ValueBound)
    assert M.divides(0, Fraction(1, 10)).certificate == Certificate.of({1: 1})
    assert M.divides(Fraction(1, 10), Fraction(1, 10)).certificate == Certificate()


def test_explicit_family_exhaustive_rejection():
    mon = PuiseuxMonoid(ExplicitFamily(["1/10", "1/21"]))
    out = mon.membership(Fraction(1, 6))
    assert isinstance(out, NotMember) and out.obstruction == ExhaustiveSearch(2, covers_family=True)
    assert isinstance(mon.membership(Fraction(1, 6), SearchBudget(max_index=1)), Unknown)
    out = mon.membership(Fraction(1, 55))
    assert isinstance(out, NotMember) and isinstance(out.obstruction, ValuationObstruction)
    assert out.obstruction.prime == 11  # 11 divides no generator
    assert mon.membership(Fraction(5, 6)).certificate == Certificate.of({1: 5, 2: 7})


# -- atoms -----------------------------------------------------------------------


def test_is_atom_examples():
    v = M.is_atom(Fraction(1, 5))
    assert v.value is False and v.witness == (Certificate.of({1: 1}), Certificate.of({1: 1}))
    assert M.is_atom(Fraction(1, 10)).value is True
    v = M.is_atom(Fraction(5, 6))
    assert v.value is False and v.witness == (Certificate.of({1: 5}), Certificate.of({2: 7}))
    for a, b in [M.is_atom(Fraction(5, 6)).witness, M.is_atom(Fraction(1, 5)).witness]:
        assert a and b


def test_is_atom_errors():
    with pytest.raises(NotInMonoid):
        M.is_atom(Fraction(1, 4))
    with pytest.raises(ValueError):
        M.is_atom(0)


@pytest.mark.parametrize("i", [1, 2, 7, 50])
def test_is_atom_generator(i):
    trace = is_atom_generator(PRIME_PAIR, i)
    assert trace.verdict
    assert all(trace.checks.values())
    assert all(j <= i for j in trace.denominator_hits)


def test_is_atom_generator_trace_for_first():
    trace = is_atom_generator(PRIME_PAIR, 1)
    assert trace.prime == 2 and trace.denominator_hits == (1,)


def test_is_atom_generator_rejects_explicit():
    with pytest.raises(TypeError):
        is_atom_generator(ExplicitFamily(["1/2"]), 1)


def test_generator_two_atom_cross_check():
    # independent route: every split a + b = 1/21 with a, b in <g_1..g_4>
    trunc = Truncation.of(PRIME_PAIR, 4)
    N = trunc.scale(Fraction(1, 21))
    reach = [oracle_membership(trunc, Fraction(k, trunc.D)).member for k in range(N + 1)]
    assert not any(reach[k] and reach[N - k] for k in range(1, N))
    assert M.is_atom(Fraction(1, 21)).value is is_atom_generator(PRIME_PAIR, 2).verdict is True


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_truncation_atoms_are_its_generators(n):
    gens = [PRIME_PAIR.value(i) for i in range(1, n + 1)]
    mon = PuiseuxMonoid(ExplicitFamily(gens))
    for g in gens:
        v = mon.is_atom(g)
        assert v.value is True and v.basis == "exhaustive"


def test_explicit_non_atom_generator():
    mon = PuiseuxMonoid(ExplicitFamily(["1/2", "1"]))
    v = mon.is_atom(Fraction(1))
    assert v.value is False
    assert mon.value(v.witness[0]) + mon.value(v.witness[1]) == 1


def test_corrupted_prime_table_breaks_atom_traces():
    table = [exactnum.nth_prime(i) for i in range(1, 50)]
    table[4] = 9
    with exactnum.substituted_primes(table):
        assert not is_atom_generator(PRIME_PAIR, 5).verdict
        assert not is_atom_generator(PRIME_PAIR, 2).verdict  # 3 | 9 = "p_5", a later index


# -- chain -----------------------------------------------------------------------


@pytest.mark.parametrize("i, c", [(1, Fraction(5, 6)), (2, Fraction(8, 15)), (3, Fraction(12, 35))])
def test_chain_elements(i, c):
    assert chain_element(i) == c


@pytest.mark.parametrize("i, cert", [(1, {1: 3}), (2, {2: 4}), (3, {3: 6})])
def test_verify_chain_link(i, cert):
    link = verify_chain_link(i)
    assert link.inclusion_certificate == Certificate.of(cert)
    assert link.strict
    assert link.c_i == link.c_next + certificate_value(PRIME_PAIR, link.inclusion_certificate)
    assert certificate_value(PRIME_PAIR, link.member_certificate) == link.c_i
    assert certificate_value(PRIME_PAIR, link.member_certificate_next) == link.c_next


def test_chain_identity_to_200():
    for i in range(1, 201):
        step = (exactnum.nth_prime(i + 2) - exactnum.nth_prime(i)) * PRIME_PAIR.value(i)
        assert chain_element(i) == chain_element(i + 1) + step
        assert chain_element(i + 1) < chain_element(i)


@pytest.mark.parametrize("n", [1, 3, 100])
def test_accp_witness(n):
    rep = accp_witness(n)
    assert rep.status is Status.VERIFIED
    assert rep.witnesses["strict_links"] == n
    assert f"up to length {n}" in rep.witnesses["note"]


# -- properties ------------------------------------------------------------------

certs = st.dictionaries(st.integers(1, 4), st.integers(1, 6), max_size=4).map(Certificate.of)


@settings(max_examples=60, deadline=None)
@given(certs)
def test_certificate_soundness(cert):
    q = certificate_value(PRIME_PAIR, cert)
    out = M.membership(q)
    assert isinstance(out, Member)
    assert certificate_value(PRIME_PAIR, out.certificate) == q


@settings(max_examples=60, deadline=None)
@given(certs, certs)
def test_divisibility_antisymmetry(c1, c2):
    a, b = certificate_value(PRIME_PAIR, c1), certificate_value(PRIME_PAIR, c2)
    ab, ba = M.divides(a, b), M.divides(b, a)
    if isinstance(ab, Member) and isinstance(ba, Member):
        assert a == b
    if a != b:
        assert not (isinstance(ab, Member) and isinstance(ba, Member))


obstructed = st.builds(
    lambda k, num, extra: Fraction(num, exactnum.nth_prime(k) ** 2 * extra),
    st.integers(1, 12),
    st.integers(1, 500),
    st.sampled_from([1, 2, 3, 5, 7]),
)


@settings(max_examples=40, deadline=None)
@given(obstructed)
def test_valuation_soundness_against_truncations(q):
    out = M.membership(q)
    if isinstance(out, NotMember) and isinstance(out.obstruction, ValuationObstruction):
        for n in range(1, 65):
            assert not oracle_membership(Truncation.of(PRIME_PAIR, n), q).member
