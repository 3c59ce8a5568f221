# gslice/ring/graded.py
"""Monomial bases of graded pieces."""
from typing import Iterator, List, Sequence

from gslice.ring.poly import Exponent, MultiPoly, PolyRing


def weighted_compositions(weights: Sequence[int], d: int) -> Iterator[Exponent]:
    """Exponent vectors e with sum(w*e) == d, lexicographically descending"""
    if not weights:
        if d == 0:
            yield ()
        return
    w, rest = weights[0], weights[1:]
    for e in range(d // w, -1, -1):
        for tail in weighted_compositions(rest, d - w * e):
            yield (e,) + tail


def monomial_exponents(ring: PolyRing, d: int) -> List[Exponent]:
    """Degree-d exponent vectors in graded-lex descending order"""
    if d < 0:
        return []
    return list(weighted_compositions(ring.weights, d))


def graded_basis(ring: PolyRing, d: int) -> List[MultiPoly]:
    return [ring.monomial(exps) for exps in monomial_exponents(ring, d)]
