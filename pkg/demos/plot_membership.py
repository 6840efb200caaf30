"""
Membership, certificates and the reachable grid
===============================================

Inside <g_1..g_4> everything scales by 30030 to an integer coin problem.
The reachable set is sparse near zero and fills in slowly.
"""

from fractions import Fraction

import numpy as np

from puiseux_atoms.factor import Truncation, reachable_table
from puiseux_atoms.families import PRIME_PAIR
from puiseux_atoms.monoid import THE_MONOID

for q in ["5/6", "1/4", "1/9", "3/10", "0"]:
    print(q, THE_MONOID.membership(Fraction(q)))

trunc = Truncation.of(PRIME_PAIR, 4)
print("D =", trunc.D, "coins =", trunc.scaled_generators)
reach = reachable_table(trunc, trunc.D)

# fraction of k/30030 in the truncation, per tenth of [0, 1]
bins = np.array_split(reach, 10)
print(np.round([b.mean() for b in bins], 3))

# 1 = 30030/30030 is in, but plenty of k just below it are not
print("largest k <= 30030 missing:", int(np.flatnonzero(~reach).max()))
