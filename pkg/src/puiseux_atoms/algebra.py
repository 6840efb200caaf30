"""The monoid algebra F[X;M]: polynomials with nonnegative rational exponents.

Coefficients come from the rationals (default) or a prime field.  Exponent
membership in M is only checked where it matters: on quotients produced by
:func:`divide_exact` and along :func:`lift_chain`.  Sums and products of
polynomials with exponents in M stay in M because M is closed under +.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .exactnum import RatLike, as_rat, format_rat, lcm_all
from .factor import Truncation, reachable_table
from .families import DEFAULT_BUDGET, PRIME_PAIR, Certificate, SearchBudget
from .monoid import THE_MONOID, Member, MembershipOutcome, PuiseuxMonoid
from .report import FalsificationError, Status


# -- coefficient fields ---------------------------------------------------------


class RationalField:
    name = "q"

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    def inv(self, a):
        return 1 / Fraction(a)

    def format(self, a) -> str:
        return str(Fraction(a))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    def __init__(self, p: int):
        from .exactnum import is_prime

        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"fp:{p}"

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def format(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


Field = Union[RationalField, PrimeField]

QQ = RationalField()


def field_from_spec(spec: str) -> Field:
    """``"q"`` or ``"fp:<p>"``."""
    if spec == "q":
        return QQ
    if spec.startswith("fp:"):
        return PrimeField(int(spec[3:]))
    raise ValueError(f"unknown field {spec!r}; expected 'q' or 'fp:<p>'")


class FieldMismatch(ValueError):
    pass


# -- polynomials -----------------------------------------------------------------


class MPoly:
    """An element of F[X;M]; immutable.

    ``terms`` is a tuple of ``(exponent, coefficient)`` with exponents
    strictly decreasing and no zero coefficients.
    """

    __slots__ = ("terms", "field")

    def __init__(self, terms: Iterable[tuple[RatLike, object]] = (), field: Field = QQ):
        acc: dict[Fraction, object] = {}
        for e, c in terms:
            e = as_rat(e)
            acc[e] = field(c) + acc.get(e, 0)
        self.field = field
        self.terms = tuple(
            (e, field(c)) for e, c in sorted(acc.items(), key=lambda t: t[0], reverse=True) if field(c) != 0
        )

    @classmethod
    def _raw(cls, terms, field):
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.field = field
        return obj

    @classmethod
    def constant(cls, c, field: Field = QQ) -> "MPoly":
        return cls([(0, c)], field)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "MPoly"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.constant(other, self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return MPoly(self.terms + other.terms, self.field)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(tuple((e, self.field(-c)) for e, c in self.terms), self.field)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return MPoly(((e1 + e2, c1 * c2) for e1, c1 in self.terms for e2, c2 in other.terms), self.field)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(other, self.field)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, self.terms))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MPoly({format_poly(self)!r}, {self.field!r})"

    def exponents(self) -> list[Fraction]:
        return [e for e, _ in self.terms]

    def degree(self) -> Fraction:
        return degree(self)


def monomial(c, a: RatLike, field: Field = QQ) -> MPoly:
    """c * X^a; a zero coefficient gives the zero polynomial."""
    a = as_rat(a)
    return MPoly([(a, c)], field)


def X(a: RatLike, field: Field = QQ) -> MPoly:
    return monomial(1, a, field)


def add(f: MPoly, g: MPoly) -> MPoly:
    return f + g


def mul(f: MPoly, g: MPoly) -> MPoly:
    return f * g


def degree(f: MPoly) -> Fraction:
    """The largest exponent of a nonzero polynomial."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no degree")
    return f.terms[0][0]


def is_unit(f: MPoly) -> bool:
    """Units of F[X;M] are exactly the nonzero constants."""
    return len(f.terms) == 1 and f.terms[0][0] == 0


def associates(f: MPoly, g: MPoly) -> bool:
    """f = u*g for a nonzero constant u."""
    f._check(g)
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    if f.exponents() != g.exponents():
        return False
    F = f.field
    u = F(f.terms[0][1] * F.inv(g.terms[0][1]))
    return all(F(cf) == F(u * cg) for (_, cf), (_, cg) in zip(f.terms, g.terms))


# -- text format -----------------------------------------------------------------

_TERM_RE = re.compile(
    r"^(?P<c>[+-]?(?:\d+(?:/\d+)?)?)\s*\*?\s*(?P<x>X(?:\^\(?\s*(?P<e>\d+(?:\s*/\s*\d+)?)\s*\)?)?)?$"
)


def format_poly(f: MPoly) -> str:
    if f.is_zero():
        return "0"
    out = []
    for e, c in f.terms:
        cs = f.field.format(c)
        out.append(cs if e == 0 else f"{cs}*X^({format_rat(e)})")
    return " + ".join(out)


def parse_poly(text: str, field: Field = QQ) -> MPoly:
    """Parse ``"c*X^(a/b) + ... + c"``; term order is free, ``-`` is allowed."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    s = re.sub(r"(?<=[\w)])\s*-\s*", " + -", s)
    terms = []
    for raw in s.split("+"):
        tok = raw.strip()
        if not tok:
            raise ValueError(f"malformed polynomial {text!r}")
        m = _TERM_RE.match(tok)
        if m is None or (m.group("x") is None and m.group("c") in ("", "+", "-")):
            raise ValueError(f"malformed term {tok!r} in {text!r}")
        c = m.group("c")
        try:
            coeff = {"": Fraction(1), "+": Fraction(1), "-": Fraction(-1)}.get(c) or Fraction(c)
            if m.group("x") is None:
                e = Fraction(0)
            elif m.group("e") is None:
                e = Fraction(1)
            else:
                e = Fraction(m.group("e").replace(" ", ""))
        except ZeroDivisionError:
            raise ValueError(f"zero denominator in term {tok!r}") from None
        terms.append((e, coeff))
    return MPoly(terms, field)


# -- exact division --------------------------------------------------------------


@dataclass(frozen=True)
class Quotient:
    quotient: MPoly
    certificates: tuple[tuple[Fraction, Certificate], ...] = ()

    def to_json(self):
        return {
            "outcome": "quotient",
            "quotient": format_poly(self.quotient),
            "support_certificates": {format_rat(e): c.to_json() for e, c in self.certificates},
        }


@dataclass(frozen=True)
class NotDivisible:
    remainder_terms: int

    def to_json(self):
        return {"outcome": "not-divisible", "remainder_terms": self.remainder_terms}


@dataclass(frozen=True)
class SupportOutsideM:
    quotient: MPoly
    offending: tuple[tuple[Fraction, MembershipOutcome], ...]

    @property
    def undecided(self) -> bool:
        """True when no offending exponent is definitely outside M."""
        from .monoid import Unknown

        return all(isinstance(o, Unknown) for _, o in self.offending)

    def to_json(self):
        return {
            "outcome": "support-outside-M",
            "quotient": format_poly(self.quotient),
            "offending": {format_rat(e): o.to_json() for e, o in self.offending},
        }


@dataclass(frozen=True)
class NegativeExponent:
    lowest_exponent: Fraction

    def to_json(self):
        return {"outcome": "negative-exponent", "lowest_exponent": str(self.lowest_exponent)}


DivisionOutcome = Union[Quotient, NotDivisible, SupportOutsideM, NegativeExponent]


def _long_division(num: dict[int, object], den: dict[int, object], field: Field, max_steps: int):
    rem = dict(num)
    dg = max(den)
    inv_lc = field.inv(den[dg])
    quo: dict[int, object] = {}
    steps = 0
    while rem:
        e = max(rem)
        if e < dg:
            break
        steps += 1
        if steps > max_steps:
            raise RuntimeError(f"long division exceeded {max_steps} steps")
        c = field(rem[e] * inv_lc)
        quo[e - dg] = c
        for eg, cg in den.items():
            k = e - dg + eg
            v = field(rem.get(k, 0) - c * cg)
            if v == 0:
                rem.pop(k, None)
            else:
                rem[k] = v
    return quo, rem


def divide_exact(
    f: MPoly,
    g: MPoly,
    budget: SearchBudget = DEFAULT_BUDGET,
    monoid: PuiseuxMonoid = THE_MONOID,
    max_steps: int = 1_000_000,
) -> DivisionOutcome:
    """Find h in F[X;M] with f = g*h.

    Exponents are scaled by the lcm D of all exponent denominators and the
    lowest power of X is factored out of both f and g; ordinary long division
    then decides divisibility in the Laurent ring, after which the quotient's
    exponents are checked for nonnegativity and for membership in M.
    """
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    field = f.field
    if f.is_zero():
        return Quotient(MPoly((), field))
    D = lcm_all(e.denominator for e in f.exponents() + g.exponents())
    fi = {int(e * D): c for e, c in f.terms}
    gi = {int(e * D): c for e, c in g.terms}
    lf, lg = min(fi), min(gi)
    quo, rem = _long_division({e - lf: c for e, c in fi.items()}, {e - lg: c for e, c in gi.items()}, field, max_steps)
    if rem:
        return NotDivisible(len(rem))
    shift = lf - lg
    if shift < 0:
        return NegativeExponent(Fraction(shift, D))
    h = MPoly(((Fraction(e + shift, D), c) for e, c in quo.items()), field)
    certs, offending = [], []
    for e in h.exponents():
        out = monoid.membership(e, budget)
        if isinstance(out, Member):
            certs.append((e, out.certificate))
        else:
            offending.append((e, out))
    if offending:
        return SupportOutsideM(h, tuple(offending))
    return Quotient(h, tuple(certs))


# -- lifting chains of principal ideals --------------------------------------------


@dataclass(frozen=True)
class LiftedLink:
    a: Fraction
    a_next: Fraction
    outcome: DivisionOutcome
    beta: Optional[Fraction]
    strict: bool

    def to_json(self):
        return {
            "a": format_rat(self.a),
            "a_next": format_rat(self.a_next),
            "division": self.outcome.to_json(),
            "quotient_degree": None if self.beta is None else format_rat(self.beta),
            "strict": self.strict,
        }


@dataclass(frozen=True)
class DomainChainReport:
    status: Status
    links: tuple[LiftedLink, ...]
    field: Field

    @property
    def strict_links(self) -> int:
        return sum(l.strict for l in self.links)

    def to_json(self):
        return {
            "status": self.status.value,
            "field": self.field.name,
            "strict_links": self.strict_links,
            "links": [l.to_json() for l in self.links],
        }


def lift_chain(
    elements: Sequence[RatLike],
    budget: SearchBudget = DEFAULT_BUDGET,
    field: Field = QQ,
    monoid: PuiseuxMonoid = THE_MONOID,
) -> DomainChainReport:
    """Lift a divisibility chain a_1, a_2, ... of M to X^{a_1}, X^{a_2}, ... .

    Each X^{a_i} / X^{a_{i+1}} must be a monomial X^beta with
    a_i = a_{i+1} + beta; the link is strict iff beta != 0, i.e. iff the
    quotient is not a unit.  A definite failure raises FalsificationError;
    a quotient whose support membership is undecided makes the report UNKNOWN.
    """
    elems = [as_rat(a) for a in elements]
    links = []
    status = Status.VERIFIED
    for a, b in zip(elems, elems[1:]):
        out = divide_exact(monomial(1, a, field), monomial(1, b, field), budget, monoid)
        if isinstance(out, SupportOutsideM) and out.undecided:
            links.append(LiftedLink(a, b, out, None, False))
            status = Status.UNKNOWN
            continue
        if not isinstance(out, Quotient):
            raise FalsificationError(
                f"X^({format_rat(b)}) does not divide X^({format_rat(a)}) in F[X;M]",
                {"a": format_rat(a), "a_next": format_rat(b), "division": out.to_json()},
            )
        h = out.quotient
        beta = degree(h)
        if len(h.terms) != 1 or h.terms[0][1] != field(1) or a != b + beta:
            raise FalsificationError(
                "degree bookkeeping failed",
                {"a": format_rat(a), "a_next": format_rat(b), "quotient": format_poly(h)},
            )
        links.append(LiftedLink(a, b, out, beta, not is_unit(h)))
    return DomainChainReport(status, tuple(links), field)


# -- bounded factorization search for X^{g_i} ---------------------------------------


@dataclass(frozen=True)
class MonomialSearch:
    index: int
    exponent: Fraction
    grid_denominator: int
    monomial_splits_checked: int
    binomial_divisors_checked: int
    found: tuple[tuple[str, str], ...]

    def to_json(self):
        return {
            "index": self.index,
            "exponent": format_rat(self.exponent),
            "grid_denominator": self.grid_denominator,
            "monomial_splits_checked": self.monomial_splits_checked,
            "binomial_divisors_checked": self.binomial_divisors_checked,
            "factorizations_found": [list(p) for p in self.found],
        }


def search_monomial_factorizations(
    i: int,
    field: Field = QQ,
    grid_n: int = 6,
    coefficients: Optional[Sequence] = None,
    budget: SearchBudget = DEFAULT_BUDGET,
    monoid: PuiseuxMonoid = THE_MONOID,
) -> MonomialSearch:
    """Look for X^{g_i} = u*v with u, v non-units, within a finite search space.

    Two kinds of candidate factor are tried:

    * monomials X^a with a on the grid (1/L)Z, L the lcm of the denominators
      of g_1..g_grid_n, and both a and g_i - a nonzero elements of the
      truncation <g_1..g_grid_n>;
    * binomials X^{e1} + c X^{e2}, e1 > e2 drawn from 0, the g_j and the
      pairwise sums g_j + g_k (j, k <= grid_n), c from *coefficients*.

    Every candidate is confirmed or refuted with the algebra's own
    multiplication and :func:`divide_exact`.
    """
    family = PRIME_PAIR
    g = family.value(i)
    target = monomial(1, g, field)
    trunc = Truncation.of(family, grid_n)
    L = trunc.D
    found: list[tuple[str, str]] = []

    N = trunc.scale(g)
    splits = 0
    if N is not None and N >= 2:
        reach = reachable_table(trunc, N)
        both = reach[1:N] & reach[N - 1 : 0 : -1]
        splits = N - 1
        for k in (int(t) + 1 for t in both.nonzero()[0]):
            u, v = monomial(1, Fraction(k, L), field), monomial(1, Fraction(N - k, L), field)
            out = divide_exact(target, u, budget, monoid)
            if u * v == target and isinstance(out, Quotient) and not is_unit(out.quotient):
                found.append((format_poly(u), format_poly(v)))

    if coefficients is None:
        coefficients = [1, -1, 2, 3] if isinstance(field, RationalField) else list(range(1, field.p))
    gens = [family.value(j) for j in range(1, grid_n + 1)]
    exps = sorted({Fraction(0), *gens, *(a + b for a in gens for b in gens)}, reverse=True)
    binomials = 0
    for x, e1 in enumerate(exps):
        for e2 in exps[x + 1 :]:
            for c in coefficients:
                if field(c) == 0:
                    continue
                u = MPoly([(e1, 1), (e2, c)], field)
                binomials += 1
                out = divide_exact(target, u, budget, monoid)
                if isinstance(out, Quotient) and not is_unit(out.quotient):
                    if u * out.quotient == target:
                        found.append((format_poly(u), format_poly(out.quotient)))
    return MonomialSearch(i, g, L, splits, binomials, tuple(found))
