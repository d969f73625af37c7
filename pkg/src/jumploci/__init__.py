"""Exact computation of degree-one jump loci of arrangement and curve complements.

The package computes, in exact rational/cyclotomic arithmetic, the
degree <= 1 Alexander and characteristic supports of hyperplane-arrangement
and plane-curve complements, together with resonance varieties, and runs a
suite of containment/divisibility/Euler-characteristic checks on them.
"""

__version__ = "0.1.0"

DEFAULT_SEED = 0x5EED
