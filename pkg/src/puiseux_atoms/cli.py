"""Command line front end.

    puiseux-atoms atoms 10
    puiseux-atoms chain 50 --text
    puiseux-atoms member 5/6
    puiseux-atoms factor 1/5 --n 3
    puiseux-atoms poly divide "X^(5/6)" "X^(8/15)"
    puiseux-atoms selftest

Exit codes: 0 all VERIFIED, 1 something FALSIFIED, 2 something UNKNOWN,
64 bad usage.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import exactnum
from .algebra import (
    Quotient,
    SupportOutsideM,
    divide_exact,
    field_from_spec,
    format_poly,
    lift_chain,
    parse_poly,
)
from .exactnum import format_rat, parse_rat
from .factor import OversizedInstance, Truncation, factorizations
from .families import PRIME_PAIR, PrimePairFamily, SearchBudget, load_family
from .monoid import (
    CHAIN_ANCHOR,
    Member,
    NotMember,
    PuiseuxMonoid,
    accp_witness,
    chain_element,
    is_atom_generator,
)
from .report import Report, Status, combine

EXIT_USAGE = 64


class UsageError(Exception):
    pass


def _family(spec: str):
    if spec == "prime-pair":
        return PRIME_PAIR
    if spec.startswith("file:"):
        try:
            return load_family(spec[5:])
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot load family from {spec[5:]}: {exc}") from exc
    raise UsageError(f"--family must be 'prime-pair' or 'file:<path>', got {spec!r}")


def _rat(text: str):
    try:
        return parse_rat(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_atoms(n: int, budget: SearchBudget, family=PRIME_PAIR) -> Report:
    anchor = "each generator 1/(p_i p_{i+2}) of M is an atom"
    if isinstance(family, PrimePairFamily):
        traces = [is_atom_generator(family, i) for i in range(1, n + 1)]
        status = Status.VERIFIED if all(t.verdict for t in traces) else Status.FALSIFIED
        return Report(f"g_1..g_{n} are atoms of M", status, anchor,
                      {"traces": [t.to_json() for t in traces]}, budget.to_json())
    top = min(n, family.size)
    monoid = PuiseuxMonoid(family)
    rows, statuses = [], []
    for i in range(1, top + 1):
        v = monoid.is_atom(family.value(i), budget)
        rows.append({"index": i, "value": format_rat(family.value(i)), **v.to_json()})
        statuses.append({True: Status.VERIFIED, False: Status.FALSIFIED, None: Status.UNKNOWN}[v.value])
    return Report(f"g_1..g_{top} are atoms of the monoid they generate", combine(statuses),
                  "atoms of a finitely generated Puiseux monoid", {"generators": rows}, budget.to_json())


def cmd_chain(n: int, budget: SearchBudget, field) -> Report:
    claim = f"(c_1) < ... < (c_{n + 1}) strictly increases in M and in F[X;M] over {field.name}"
    monoid_report = accp_witness(n)
    try:
        lifted = lift_chain([chain_element(i) for i in range(1, n + 2)], budget, field)
    except Exception as exc:
        payload = getattr(exc, "payload", {"error": str(exc)})
        return Report(claim, Status.FALSIFIED, CHAIN_ANCHOR, {"monoid": monoid_report.to_dict(), "algebra": payload},
                      budget.to_json())
    statuses = [monoid_report.status, lifted.status]
    if lifted.status is Status.VERIFIED and lifted.strict_links != n:
        statuses.append(Status.FALSIFIED)
    status = combine(statuses)
    return Report(claim, status, CHAIN_ANCHOR, {"monoid": monoid_report.to_dict(), "algebra": lifted.to_json()},
                  budget.to_json())


def cmd_member(q_text: str, budget: SearchBudget, family=PRIME_PAIR) -> Report:
    q = _rat(q_text)
    out = PuiseuxMonoid(family).membership(q, budget)
    status = Status.VERIFIED if isinstance(out, Member) else Status.FALSIFIED if isinstance(out, NotMember) else Status.UNKNOWN
    return Report(f"{format_rat(q)} ∈ M", status, "M = finite sums of generators", {"query": format_rat(q), **out.to_json()},
                  budget.to_json())


def cmd_factor(q_text: str, n: int, cap: int, family=PRIME_PAIR, budget: Optional[SearchBudget] = None) -> Report:
    q = _rat(q_text)
    budget = budget or SearchBudget()
    claim = f"factorizations of {format_rat(q)} in <g_1..g_{n}>"
    try:
        trunc = Truncation.of(family, n)
        fs = factorizations(trunc, q, cap)
    except OversizedInstance as exc:
        return Report(claim, Status.UNKNOWN, "a finite sum of atoms", {"oversized": str(exc)}, budget.to_json())
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if not fs.certificates:
        return Report(claim, Status.FALSIFIED, "a finite sum of atoms",
                      {"query": format_rat(q), "n": n, "member": False}, budget.to_json())
    payload = {
        "query": format_rat(q),
        "n": n,
        "D": trunc.D,
        "factorizations": [c.to_json() for c in fs],
        "lengths": sorted(fs.lengths()),
        "complete": fs.complete,
    }
    status = Status.VERIFIED if fs.complete else Status.UNKNOWN
    return Report(claim, status, "a finite sum of atoms", payload, budget.to_json())


def cmd_poly(action: str, operands: Sequence[str], budget: SearchBudget, field) -> Report:
    want = {"parse": 1, "mul": 2, "divide": 2}[action]
    if len(operands) != want:
        raise UsageError(f"poly {action} takes {want} operand(s)")
    try:
        polys = [parse_poly(t, field) for t in operands]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    anchor = "polynomial expressions over F with exponents in M"
    if action == "parse":
        return Report("canonical form", Status.VERIFIED, anchor, {"poly": format_poly(polys[0])}, budget.to_json())
    if action == "mul":
        f, g = polys
        return Report("product", Status.VERIFIED, anchor, {"f": format_poly(f), "g": format_poly(g), "product": format_poly(f * g)},
                      budget.to_json())
    f, g = polys
    if g.is_zero():
        raise UsageError("division by zero polynomial")
    out = divide_exact(f, g, budget)
    if isinstance(out, Quotient):
        status = Status.VERIFIED
    elif isinstance(out, SupportOutsideM) and out.undecided:
        status = Status.UNKNOWN
    else:
        status = Status.FALSIFIED
    return Report(f"({format_poly(g)}) divides ({format_poly(f)}) in F[X;M]", status, anchor,
                  {"f": format_poly(f), "g": format_poly(g), **out.to_json()}, budget.to_json())


CORRUPT_INDEX = 5


def corrupted_prime_table(size: int = 2000) -> list[int]:
    # p_5 = 11 replaced by 9: still increasing, no longer all prime
    table = [exactnum.nth_prime(i) for i in range(1, size + 1)]
    table[CORRUPT_INDEX - 1] = 9
    return table


def cmd_selftest(budget: SearchBudget, field, corrupt_primes: bool = False, progress=None) -> Report:
    from .suite import run_all

    if corrupt_primes:
        with exactnum.substituted_primes(corrupted_prime_table()):
            return run_all(budget, field, progress)
    return run_all(budget, field, progress)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-index", type=int, default=256, help="largest generator index searched")
    common.add_argument("--cap", type=int, default=10_000, help="maximum number of factorizations listed")
    common.add_argument("--field", default="q", help="coefficient field: q or fp:<p>")
    common.add_argument("--family", default="prime-pair", help="prime-pair or file:<path.json>")
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", dest="text", action="store_false", help="JSON output (default)")
    out.add_argument("--text", dest="text", action="store_true", help="human-readable output")
    common.set_defaults(text=False)

    parser = argparse.ArgumentParser(prog="puiseux-atoms", description="Exact verification for the monoid M = <1/(p_i p_(i+2))> and F[X;M].")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("atoms", parents=[common], help="verify that g_1..g_n are atoms")
    p.add_argument("n", type=int)
    p = sub.add_parser("chain", parents=[common], help="certify n strict links of the chain in M and F[X;M]")
    p.add_argument("n", type=int)
    p = sub.add_parser("member", parents=[common], help="decide q in M with a certificate")
    p.add_argument("q")
    p = sub.add_parser("factor", parents=[common], help="all factorizations of q in <g_1..g_n>")
    p.add_argument("q")
    p.add_argument("--n", type=int, default=3, dest="trunc_n")
    p = sub.add_parser("poly", parents=[common], help="parse, multiply or divide polynomials of F[X;M]")
    p.add_argument("action", choices=["parse", "mul", "divide"])
    p.add_argument("operands", nargs="+")
    p = sub.add_parser("selftest", parents=[common], help="run every verification suite")
    p.add_argument("--corrupt-primes", action="store_true", help=argparse.SUPPRESS)
    return parser


def run(args: argparse.Namespace) -> Report:
    if args.max_index < 1:
        raise UsageError("--max-index must be >= 1")
    if args.cap < 1:
        raise UsageError("--cap must be >= 1")
    budget = SearchBudget(max_index=args.max_index)
    try:
        field = field_from_spec(args.field)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    family = _family(args.family)
    cmd = args.command
    if cmd in ("atoms", "chain") and args.n < 1:
        raise UsageError("n must be >= 1")
    if cmd == "atoms":
        return cmd_atoms(args.n, budget, family)
    if cmd == "chain":
        if not isinstance(family, PrimePairFamily):
            raise UsageError("the chain is defined for the prime-pair family only")
        return cmd_chain(args.n, budget, field)
    if cmd == "member":
        return cmd_member(args.q, budget, family)
    if cmd == "factor":
        return cmd_factor(args.q, args.trunc_n, args.cap, family, budget)
    if cmd == "poly":
        return cmd_poly(args.action, args.operands, budget, field)
    if cmd == "selftest":
        if not isinstance(family, PrimePairFamily):
            raise UsageError("selftest runs on the prime-pair family")
        err = sys.stderr
        return cmd_selftest(budget, field, args.corrupt_primes,
                            progress=lambda r: print(f"[{r.status.value}] {r.claim}", file=err))
    raise UsageError(f"unknown command {cmd}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else EXIT_USAGE
    try:
        report = run(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"puiseux-atoms: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(report.to_text() if args.text else report.to_json())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
