# gslice/ring/division.py
from typing import NamedTuple, Optional, Tuple

from sympy.polys.polyerrors import ExactQuotientFailed

from gslice.core.errors import DivisionError, RingMismatchError
from gslice.ring.coeffs import CoeffKind, CoeffRing
from gslice.ring.poly import MultiPoly


class PseudoDivision(NamedTuple):
    quotient: MultiPoly
    remainder: MultiPoly
    power: int  # lc(g, v)^power * f == quotient * g + remainder


def pseudo_divide(f: MultiPoly, g: MultiPoly, v: str) -> PseudoDivision:
    """Pseudo-division of f by g with respect to the variable v.

    The remainder is sympy's prem; the quotient is recovered by exact
    division of lc^power * f - remainder, with power = deg_v f - deg_v g + 1.
    """
    if f.ring != g.ring:
        raise RingMismatchError(f"ring mismatch: {f.ring} vs {g.ring}")
    m = g.degree_in(v)
    if g.is_zero() or m <= 0:
        raise DivisionError(f"divisor {g} has no positive degree in {v}")
    n = f.degree_in(v)
    if n < m:
        return PseudoDivision(f.ring.zero(), f, 0)
    i = f.ring.index(v)
    fe, ge = f.element, g.element
    power = n - m + 1
    remainder = fe.prem(ge, i)
    scaled = fe * ge.coeff_wrt(i, m) ** power
    quotient = (scaled - remainder).exquo(ge)
    return PseudoDivision(f.ring.wrap(quotient), f.ring.wrap(remainder), power)


def divides(g: MultiPoly, f: MultiPoly, v: str) -> bool:
    """True when the pseudo-remainder of f by g in v vanishes"""
    return pseudo_divide(f, g, v).remainder.is_zero()


def exact_quotient(f: MultiPoly, g: MultiPoly) -> Optional[MultiPoly]:
    """f / g when g divides f exactly, otherwise None"""
    if f.ring != g.ring:
        raise RingMismatchError(f"ring mismatch: {f.ring} vs {g.ring}")
    if g.is_zero():
        raise DivisionError("division by the zero polynomial")
    try:
        return f.ring.wrap(f.element.exquo(g.element))
    except ExactQuotientFailed:
        return None


def split_linear(g: MultiPoly, v: str) -> Tuple[MultiPoly, MultiPoly]:
    """Write g = lead*v + tail with lead, tail free of v"""
    if g.degree_in(v) != 1:
        raise DivisionError(f"{g} is not linear in {v}")
    parts = g.coefficients_in(v)
    return parts[1], parts.get(0, g.ring.zero())


def substitute_linear(f: MultiPoly, v: str, lead: MultiPoly, tail: MultiPoly,
                      power: Optional[int] = None) -> Tuple[MultiPoly, int]:
    """lead^k * f evaluated at v = -tail/lead, kept polynomial; returns (value, k).

    k defaults to the degree of f in v; a larger power may be requested so
    that the map stays linear across a family of polynomials.
    """
    parts = f.coefficients_in(v) if not f.is_zero() else {}
    k = max(parts, default=0)
    if power is not None:
        if power < k:
            raise DivisionError(f"power {power} is below the degree {k} in {v}")
        k = power
    neg_tail = -tail
    result = f.ring.zero()
    for i, part in parts.items():
        result = result + part * neg_tail ** i * lead ** (k - i)
    return result, k


def reduce_char(f: MultiPoly, p: int) -> MultiPoly:
    """Reduce integer coefficients modulo the prime p"""
    if f.ring.coeff.kind == CoeffKind.prime:
        raise RingMismatchError("reduce_char expects integer coefficients")
    return f.change_ring(CoeffRing.prime_field(p))
