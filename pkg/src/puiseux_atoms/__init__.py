"""Exact computations in the monoid M = <1/(p_i p_{i+2}) : i >= 1> of
nonnegative rationals and its monoid algebra F[X;M]."""

__version__ = "0.1.0"
