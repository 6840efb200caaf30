"""
Arithmetic in Q[X;M] and GF(5)[X;M]
===================================
"""

from fractions import Fraction

from puiseux_atoms.algebra import PrimeField, X, divide_exact, format_poly, parse_poly

f = parse_poly("X^(1/10) + 1")
g = parse_poly("X^(1/21) + 2")
print(format_poly(f * g))

# dividing the product back recovers f, with certificates for its exponents
out = divide_exact(f * g, g)
print(format_poly(out.quotient), out.certificates)

# exponent 1/12 is not in M, so this quotient is rejected
print(divide_exact(X(Fraction(1, 3)), X(Fraction(1, 4))))

# in characteristic 5, (X^(1/10) + 1)^5 = X^(1/2) + 1
k = PrimeField(5)
h = X(Fraction(1, 10), k) + 1
print(format_poly(h * h * h * h * h))
