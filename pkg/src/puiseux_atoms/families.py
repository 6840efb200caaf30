"""Generator families, certificates and search budgets.

A family is an indexed sequence g_1, g_2, ... of positive rationals; the
monoid it generates is the set of all finite nonnegative integer
combinations.  Two kinds exist:

* :class:`PrimePairFamily`, with g_i = 1/(p_i * p_{i+2}) for the i-th
  prime p_i.  Infinite.
* :class:`ExplicitFamily`, a finite user-supplied list.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Optional, Union

from . import exactnum
from .exactnum import as_rat, format_rat


class PrimePairFamily:
    kind = "prime-pair"
    size: Optional[int] = None

    def value(self, i: int) -> Fraction:
        if i < 1:
            raise IndexError(f"generator index must be >= 1, got {i}")
        return Fraction(1, exactnum.nth_prime(i) * exactnum.nth_prime(i + 2))

    def denominator_primes(self, i: int) -> tuple[int, int]:
        return exactnum.nth_prime(i), exactnum.nth_prime(i + 2)

    def indices_with_prime(self, p: int) -> list[int]:
        """Indices j whose generator has *p* in its denominator.

        For the k-th prime these are j = k - 2 (when k > 2) and j = k.
        """
        k = exactnum.prime_table().index_of(p)
        if k is None:
            return []
        return [j for j in (k - 2, k) if j >= 1]

    def to_json(self) -> dict:
        return {"family": "prime-pair"}

    def __eq__(self, other):
        return isinstance(other, PrimePairFamily)

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return "PrimePairFamily()"


class ExplicitFamily:
    kind = "explicit"

    def __init__(self, generators: Iterable):
        gens = tuple(as_rat(g) for g in generators)
        if not gens:
            raise ValueError("an explicit family needs at least one generator")
        if any(g <= 0 for g in gens):
            raise ValueError("generators must be strictly positive")
        if len(set(gens)) != len(gens):
            raise ValueError("duplicate generators")
        self.generators = gens

    @property
    def size(self) -> int:
        return len(self.generators)

    def value(self, i: int) -> Fraction:
        if not 1 <= i <= len(self.generators):
            raise IndexError(f"generator index {i} out of range 1..{len(self.generators)}")
        return self.generators[i - 1]

    def indices_with_prime(self, p: int) -> list[int]:
        return [i for i, g in enumerate(self.generators, 1) if g.denominator % p == 0]

    def to_json(self) -> dict:
        return {"generators": [format_rat(g) for g in self.generators]}

    def __eq__(self, other):
        return isinstance(other, ExplicitFamily) and other.generators == self.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return f"ExplicitFamily([{', '.join(map(format_rat, self.generators))}])"


GeneratorFamily = Union[PrimePairFamily, ExplicitFamily]

PRIME_PAIR = PrimePairFamily()


def family_from_config(config: Mapping) -> GeneratorFamily:
    """Build a family from ``{"family": "prime-pair"}`` or ``{"generators": [...]}``."""
    if "generators" in config:
        return ExplicitFamily(config["generators"])
    if config.get("family") == "prime-pair":
        return PRIME_PAIR
    raise ValueError(f"unrecognised family config: {dict(config)!r}")


def load_family(path: Union[str, os.PathLike]) -> GeneratorFamily:
    with open(Path(path)) as fh:
        return family_from_config(json.load(fh))


def generator_value(family: GeneratorFamily, i: int) -> Fraction:
    return family.value(i)


@dataclass(frozen=True)
class Certificate:
    """Finite multiset of generator indices: ``{index: count}``, counts >= 1.

    Entries are kept sorted by index so equal certificates compare and hash
    equal regardless of how they were built.
    """

    entries: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for i, k in self.entries:
            if i < 1 or k < 1:
                raise ValueError(f"bad certificate entry {i}:{k}")
        idx = [i for i, _ in self.entries]
        if idx != sorted(set(idx)):
            raise ValueError("certificate indices must be distinct and sorted")

    @classmethod
    def of(cls, counts: Union[Mapping[int, int], Iterable[tuple[int, int]], None] = None):
        if counts is None:
            return cls()
        items = counts.items() if isinstance(counts, Mapping) else counts
        merged: dict[int, int] = {}
        for i, k in items:
            if k:
                merged[int(i)] = merged.get(int(i), 0) + int(k)
        return cls(tuple(sorted(merged.items())))

    @classmethod
    def from_counts(cls, counts: Iterable[int], start: int = 1):
        """From a dense count vector (k_start, k_start+1, ...)."""
        return cls.of((i, k) for i, k in enumerate(counts, start) if k)

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    @property
    def length(self) -> int:
        return sum(k for _, k in self.entries)

    @property
    def max_index(self) -> int:
        return self.entries[-1][0] if self.entries else 0

    def __bool__(self):
        return bool(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __add__(self, other: "Certificate") -> "Certificate":
        return Certificate.of(list(self.entries) + list(other.entries))

    def to_json(self) -> dict[str, int]:
        return {str(i): k for i, k in self.entries}

    def __str__(self):
        return "{" + ", ".join(f"{i}:{k}" for i, k in self.entries) + "}"


def certificate_value(family: GeneratorFamily, cert: Certificate) -> Fraction:
    """Exact value of sum(count * g_index)."""
    total = Fraction(0)
    for i, k in cert.entries:
        total += k * family.value(i)
    return total


@dataclass(frozen=True)
class SearchBudget:
    max_index: int = 256
    notes: str = ""

    def __post_init__(self):
        if self.max_index < 1:
            raise ValueError("max_index must be >= 1")

    def to_json(self) -> dict:
        return {"max_index": self.max_index, "notes": self.notes}


DEFAULT_BUDGET = SearchBudget()
