"""
Many factorizations of the same element
=======================================

M is atomic but factorization is far from unique.
"""

from fractions import Fraction

from puiseux_atoms.factor import Truncation, factorizations, length_set
from puiseux_atoms.families import PRIME_PAIR

trunc = Truncation.of(PRIME_PAIR, 3)
for q in ["1/5", "3/10", "1"]:
    fs = factorizations(trunc, Fraction(q))
    print(q, len(fs), "factorizations, lengths", sorted(fs.lengths()))

# lengths of 1/5 in bigger truncations
for n in range(3, 7):
    L = length_set(Truncation.of(PRIME_PAIR, n), Fraction(1, 5))
    print(n, sorted(L))
