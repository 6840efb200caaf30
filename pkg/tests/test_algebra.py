import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from puiseux_atoms.algebra import (
    QQ,
    FieldMismatch,
    MPoly,
    NegativeExponent,
    NotDivisible,
    PrimeField,
    Quotient,
    SupportOutsideM,
    X,
    add,
    associates,
    degree,
    divide_exact,
    field_from_spec,
    format_poly,
    is_unit,
    lift_chain,
    monomial,
    mul,
    parse_poly,
    search_monomial_factorizations,
)
from puiseux_atoms.families import Certificate, SearchBudget
from puiseux_atoms.monoid import Unknown, chain_element
from puiseux_atoms.report import Status
from puiseux_atoms.suite import random_poly

F = Fraction
ONE = MPoly.constant(1)


def test_add_examples():
    assert add(X(F(1, 10)) + 1, MPoly.constant(-1)) == X(F(1, 10))
    f = X(F(1, 21)) + 3
    assert add(f, MPoly()) == f
    s = add(X(F(5, 6)), X(F(8, 15)))
    assert s.exponents() == [F(5, 6), F(8, 15)]


def test_mul_examples():
    a = X(F(1, 10))
    assert mul(a + 1, a - 1) == X(F(1, 5)) - 1
    assert mul(X(F(5, 6)), X(F(8, 15))) == X(F(41, 30))
    f = a * 2 + X(F(1, 21))
    assert mul(f, ONE) == f


def test_degree_examples():
    assert degree(X(F(5, 6)) + 2) == F(5, 6)
    assert degree(MPoly.constant(3)) == 0
    with pytest.raises(ValueError):
        degree(MPoly())


def test_units_and_associates():
    assert is_unit(MPoly.constant(7))
    assert not is_unit(X(F(1, 10)))
    assert not is_unit(MPoly())
    f = X(F(5, 6)) + X(F(1, 10)) * 2 - 1
    assert associates(f, f * 3)
    assert associates(f, f)
    assert not associates(X(F(1, 10)), X(F(1, 21)))
    assert not associates(f, f + 1)
    assert not associates(MPoly(), f)


def test_monomial_examples():
    assert monomial(1, 0) == ONE
    assert monomial(1, F(5, 6)) == X(F(5, 6))
    assert monomial(0, F(1, 10)).is_zero()
    with pytest.raises(ValueError):
        monomial(1, F(-1, 2))


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        X(1) + X(1, PrimeField(5))
    with pytest.raises(FieldMismatch):
        mul(X(1), X(1, PrimeField(7)))


def test_field_from_spec():
    assert field_from_spec("q") == QQ
    assert field_from_spec("fp:5") == PrimeField(5)
    for bad in ["fp:4", "fp:x", "r", "fp:1"]:
        with pytest.raises(ValueError):
            field_from_spec(bad)


def test_prime_field_reduces():
    k = PrimeField(5)
    f = X(F(1, 10), k) + 1
    assert (f * 5).is_zero()
    assert mul(f, f) == X(F(1, 5), k) + X(F(1, 10), k) * 2 + 1
    # (x + 1)^5 = x^5 + 1 in characteristic 5
    p = MPoly.constant(1, k)
    for _ in range(5):
        p = p * f
    assert p == X(F(1, 2), k) + 1


# -- text format -----------------------------------------------------------------


@pytest.mark.parametrize("text, canonical", [
    ("X^(5/6)", "1*X^(5/6)"),
    ("X^(1/10) + 1", "1*X^(1/10) + 1"),
    ("2 - 3*X^(1/21)", "-3*X^(1/21) + 2"),
    ("0", "0"),
    ("1/2*X^(1/10) + 1/2*X^(1/10)", "1*X^(1/10)"),
])
def test_parse_canonical(text, canonical):
    assert format_poly(parse_poly(text)) == canonical


def test_parse_errors():
    for bad in ["X^(-1/2)", "X^(1/0)", "Y^(1/2)", "1 +", "X^(a)"]:
        with pytest.raises(ValueError):
            parse_poly(bad)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_format_parse_roundtrip(seed):
    rng = random.Random(seed)
    f = random_poly(rng, QQ)
    assert parse_poly(format_poly(f)) == f


# -- division --------------------------------------------------------------------


def test_divide_examples():
    out = divide_exact(X(F(5, 6)), X(F(8, 15)))
    assert isinstance(out, Quotient) and out.quotient == X(F(3, 10))
    assert dict(out.certificates) == {F(3, 10): Certificate.of({1: 3})}
    assert isinstance(divide_exact(X(F(8, 15)), X(F(5, 6))), NegativeExponent)
    a, b = X(F(1, 10)) + 1, X(F(1, 21)) + 2
    out = divide_exact(a * b, b)
    assert isinstance(out, Quotient) and out.quotient == a


def test_divide_not_divisible():
    out = divide_exact(X(F(1, 5)) + 1, X(F(1, 10)) + 1)
    assert isinstance(out, NotDivisible)
    with pytest.raises(ZeroDivisionError):
        divide_exact(ONE, MPoly())
    assert divide_exact(MPoly(), ONE).quotient.is_zero()


def test_divide_support_outside():
    # quotient exponent 1/12 has v_2 = -2
    out = divide_exact(X(F(1, 3)), X(F(1, 4)))
    assert isinstance(out, SupportOutsideM) and not out.undecided
    assert [e for e, _ in out.offending] == [F(1, 12)]


def test_divide_unknown_surfaces():
    out = divide_exact(X(F(1, 2)) * X(F(1, 6)), X(F(1, 2)), SearchBudget(max_index=1))
    assert isinstance(out, SupportOutsideM) and out.undecided
    assert isinstance(out.offending[0][1], Unknown)


# -- properties ------------------------------------------------------------------

def _pairs(field, count, seed):
    rng = random.Random(seed)
    return [(random_poly(rng, field), random_poly(rng, field)) for _ in range(count)]


@pytest.mark.parametrize("field", [QQ, PrimeField(5)], ids=["q", "fp5"])
def test_ring_laws(field):
    rng = random.Random(7)
    for _ in range(50):
        f, g, h = (random_poly(rng, field) for _ in range(3))
        assert f + g == g + f and f * g == g * f
        assert (f + g) + h == f + (g + h)
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h


@pytest.mark.parametrize("field", [QQ, PrimeField(5)], ids=["q", "fp5"])
def test_no_zero_divisors_and_roundtrip(field):
    for f, g in _pairs(field, 200, seed=11):
        p = f * g
        assert not p.is_zero()
        assert degree(p) == degree(f) + degree(g)
        out = divide_exact(p, g)
        assert isinstance(out, Quotient) and out.quotient == f


def test_associate_coherence():
    for f, g in _pairs(QQ, 60, seed=3) + [(f, f * c) for f, _ in _pairs(QQ, 20, seed=4) for c in (2, F(-1, 3))]:
        fg, gf = divide_exact(f, g), divide_exact(g, f)
        both_units = (isinstance(fg, Quotient) and is_unit(fg.quotient)
                      and isinstance(gf, Quotient) and is_unit(gf.quotient))
        assert associates(f, g) == both_units


# -- chains ----------------------------------------------------------------------


def test_lift_chain_strict():
    rep = lift_chain([chain_element(i) for i in (1, 2, 3)])
    assert rep.status is Status.VERIFIED and rep.strict_links == 2
    assert [l.outcome.quotient for l in rep.links] == [X(F(3, 10)), X(F(4, 21))]
    for link in rep.links:
        assert link.a == link.a_next + link.beta


def test_lift_chain_stationary():
    a = F(5, 6)
    rep = lift_chain([a, a])
    (link,) = rep.links
    assert link.outcome.quotient == ONE and link.beta == 0 and not link.strict
    rep = lift_chain([0, 0, 0])
    assert rep.status is Status.VERIFIED and rep.strict_links == 0


def test_lift_chain_over_fp():
    rep = lift_chain([chain_element(i) for i in range(1, 8)], field=PrimeField(5))
    assert rep.status is Status.VERIFIED and rep.strict_links == 6


def test_lift_chain_rejects_bad_link():
    from puiseux_atoms.report import FalsificationError

    with pytest.raises(FalsificationError):
        lift_chain([F(8, 15), F(5, 6)])


@pytest.mark.parametrize("i", [1, 2, 3])
def test_monomial_generators_have_no_split(i):
    res = search_monomial_factorizations(i, QQ)
    assert res.found == ()
    assert res.monomial_splits_checked > 0 and res.binomial_divisors_checked > 0
