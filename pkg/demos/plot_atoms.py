"""
Why every generator is an atom
==============================

The generator g_i = 1/(p_i p_{i+2}) is the only one whose denominator
carries p_i together with everything after it.  Any sum that reaches g_i
has to get its factor 1/p_i from the earlier generators, which are too big.
"""

from fractions import Fraction

from puiseux_atoms.families import PRIME_PAIR
from puiseux_atoms.monoid import THE_MONOID, is_atom_generator

# the first few generators
for i in range(1, 6):
    print(i, PRIME_PAIR.value(i))

# the proof trace for g_3 = 1/55 lists the facts it relies on
trace = is_atom_generator(PRIME_PAIR, 3)
print(trace.verdict, trace.checks)

# 1/5 is in M, but it is not an atom: 1/10 + 1/10
verdict = THE_MONOID.is_atom(Fraction(1, 5))
print(verdict.value, [str(c) for c in verdict.witness])

# neither is 5/6, which splits as 5*g_1 + 7*g_2
verdict = THE_MONOID.is_atom(Fraction(5, 6))
print(verdict.value, [str(c) for c in verdict.witness])
