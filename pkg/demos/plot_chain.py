"""
A chain of principal ideals that never stops
=============================================

c_i = 1/p_i + 1/p_{i+1} decreases, and each step c_i - c_{i+1} is a
multiple of g_i.  So c_{i+1} divides c_i and the ideals (c_i) grow
strictly.
"""

from puiseux_atoms.algebra import lift_chain
from puiseux_atoms.monoid import THE_MONOID, accp_witness, chain_element, verify_chain_link

for i in range(1, 6):
    link = verify_chain_link(i)
    print(f"c_{i} = {link.c_i}   c_{i} - c_{i + 1} = {link.inclusion_certificate}")

# c_1 does not divide c_2: the difference would be negative
print(THE_MONOID.divides(chain_element(1), chain_element(2)))

# a required-length witness, as the CLI reports it
print(accp_witness(20).to_text().splitlines()[0])

# the same chain lifted to monomials X^(c_i) in Q[X;M]
rep = lift_chain([chain_element(i) for i in range(1, 6)])
for link in rep.links:
    print(link.a, "->", link.a_next, "quotient degree", link.beta)
