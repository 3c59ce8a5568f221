from gslice.ring.coeffs import CoeffKind, CoeffRing
from gslice.ring.poly import MultiPoly, PolyRing
from gslice.ring.parser import parse_poly
from gslice.ring.graded import graded_basis, monomial_exponents
from gslice.ring.division import (
    PseudoDivision,
    exact_quotient,
    pseudo_divide,
    reduce_char,
    substitute_linear,
)

__all__ = [
    'CoeffKind', 'CoeffRing', 'MultiPoly', 'PolyRing', 'parse_poly',
    'graded_basis', 'monomial_exponents',
    'PseudoDivision', 'exact_quotient', 'pseudo_divide', 'reduce_char', 'substitute_linear',
]
