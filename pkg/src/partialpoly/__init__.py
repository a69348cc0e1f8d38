"""Exact polytopes of partial permutation and partial alternating sign matrices.

Covers the partial permutation polytope PPerm(m,n), the partial alternating
sign matrix polytope PASM(m,n) and the partial permutohedron P(m,n):
membership, facets, vertex decompositions, face lattices, projections and
Ehrhart polynomials. All arithmetic is exact.
"""

from fractions import Fraction

from partialpoly.exact import RatPolynomial, interpolate, parse_rational, render_rational

__version__ = "0.1.0"

__all__ = [
    "Fraction",
    "RatPolynomial",
    "interpolate",
    "parse_rational",
    "render_rational",
]
