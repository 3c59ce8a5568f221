# gslice/ring/poly.py
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import Symbol
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement
from sympy.polys.rings import PolyRing as SympyPolyRing

from gslice.core.errors import RingMismatchError, UnknownVariableError
from gslice.ring.coeffs import CoeffKind, CoeffRing, Scalar

Exponent = Tuple[int, ...]

IDENTIFIER = re.compile(r"^[A-Za-z][A-Za-z0-9]*$")


@dataclass(frozen=True)
class PolyRing:
    """Polynomial ring over a coefficient ring with named, weighted variables.

    Arithmetic is delegated to a sympy sparse polynomial ring over the
    coefficient ring's domain; weights, names and ordering live here.
    """

    coeff: CoeffRing
    variables: Tuple[str, ...]
    weights: Tuple[int, ...] = ()
    _index: Dict[str, int] = field(default=None, init=False, repr=False, compare=False, hash=False)
    _backend: SympyPolyRing = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        variables = tuple(self.variables)
        weights = tuple(self.weights) if self.weights else (1,) * len(variables)
        if len(weights) != len(variables):
            raise RingMismatchError("one weight per variable is required")
        if len(set(variables)) != len(variables):
            raise RingMismatchError(f"variable names must be distinct: {variables}")
        for name in variables:
            if not IDENTIFIER.match(name):
                raise RingMismatchError(f"invalid variable name {name!r}")
        if any(not isinstance(w, int) or w < 1 for w in weights):
            raise RingMismatchError(f"weights must be positive integers: {weights}")
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(variables)})
        backend = SympyPolyRing(tuple(Symbol(name) for name in variables), self.coeff.domain, grlex)
        object.__setattr__(self, "_backend", backend)

    def __reduce__(self):
        return (PolyRing, (self.coeff, self.variables, self.weights))

    @property
    def backend(self) -> SympyPolyRing:
        return self._backend

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(name)

    def has(self, name: str) -> bool:
        return name in self._index

    def weighted_degree(self, exps: Exponent) -> int:
        return sum(w * e for w, e in zip(self.weights, exps))

    def order_key(self, exps: Exponent) -> Tuple[int, Exponent]:
        """Graded-lex key: weighted degree first, then the exponent vector"""
        return (self.weighted_degree(exps), exps)

    def wrap(self, element: PolyElement) -> "MultiPoly":
        """Adopt a sympy element of this ring's backend"""
        if element.ring != self._backend:
            raise RingMismatchError(f"{element.ring} is not the backend of {self}")
        return MultiPoly._wrap(self, element)

    def zero(self) -> "MultiPoly":
        return MultiPoly._wrap(self, self._backend.zero)

    def one(self) -> "MultiPoly":
        return MultiPoly._wrap(self, self._backend.one)

    def constant(self, value: Scalar) -> "MultiPoly":
        return MultiPoly(self, {(0,) * self.nvars: value})

    def monomial(self, exps: Sequence[int], value: Scalar = 1) -> "MultiPoly":
        return MultiPoly(self, {tuple(exps): value})

    def gen(self, name: str) -> "MultiPoly":
        return MultiPoly._wrap(self, self._backend.gens[self.index(name)])

    def gens(self) -> List["MultiPoly"]:
        return [self.gen(name) for name in self.variables]

    def parse(self, text: str) -> "MultiPoly":
        from gslice.ring.parser import parse_poly
        return parse_poly(self, text)

    def with_coeff(self, coeff: CoeffRing) -> "PolyRing":
        return PolyRing(coeff, self.variables, self.weights)

    def extend(self, names: Sequence[str], weights: Optional[Sequence[int]] = None) -> "PolyRing":
        extra = tuple(weights) if weights else (1,) * len(names)
        return PolyRing(self.coeff, self.variables + tuple(names), self.weights + extra)

    def without(self, names: Iterable[str]) -> "PolyRing":
        drop = set(names)
        for name in drop:
            self.index(name)
        kept = [(v, w) for v, w in zip(self.variables, self.weights) if v not in drop]
        return PolyRing(self.coeff, tuple(v for v, _ in kept), tuple(w for _, w in kept))

    def __str__(self) -> str:
        return f"{self.coeff.tag}[{','.join(self.variables)}]"


class MultiPoly:
    """Immutable polynomial over a PolyRing, backed by a sympy PolyElement.

    Coefficients cross the API as Python ints and Fractions; the element
    itself holds sympy domain values and is never mutated in place.
    """

    __slots__ = ("ring", "element", "_hash")

    def __init__(self, ring: PolyRing, terms: Optional[Mapping[Exponent, Scalar]] = None):
        coeff = ring.coeff
        domain = coeff.domain
        acc = {}
        for exps, value in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != ring.nvars or any(e < 0 for e in exps):
                raise RingMismatchError(f"bad exponent vector {exps} for {ring}")
            acc[exps] = acc.get(exps, domain.zero) + coeff.to_domain(value)
        self.ring = ring
        self.element = ring.backend.from_dict(acc)
        self._hash = None

    def __reduce__(self):
        return (MultiPoly, (self.ring, self.term_map()))

    @classmethod
    def _wrap(cls, ring: PolyRing, element: PolyElement) -> "MultiPoly":
        poly = cls.__new__(cls)
        poly.ring = ring
        poly.element = element
        poly._hash = None
        return poly

    def _from_items(self, items: Mapping[Exponent, object]) -> "MultiPoly":
        return MultiPoly._wrap(self.ring, self.ring.backend.from_dict(dict(items)))

    # -- inspection ---------------------------------------------------------

    def terms(self) -> List[Tuple[Exponent, Scalar]]:
        """Terms in graded-lex descending order"""
        key = self.ring.order_key
        return sorted(self.term_map().items(), key=lambda item: key(item[0]), reverse=True)

    def term_map(self) -> Dict[Exponent, Scalar]:
        convert = self.ring.coeff.from_domain
        return {exps: convert(value) for exps, value in self.element.items()}

    def coefficient(self, exps: Sequence[int]) -> Scalar:
        value = self.element.get(tuple(exps))
        return 0 if value is None else self.ring.coeff.from_domain(value)

    def __len__(self) -> int:
        return len(self.element)

    def is_zero(self) -> bool:
        return not self.element

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.element)

    def constant_value(self) -> Scalar:
        return self.coefficient((0,) * self.ring.nvars)

    def degree(self) -> int:
        """Weighted total degree; -1 for the zero polynomial"""
        if not self.element:
            return -1
        return max(self.ring.weighted_degree(e) for e in self.element)

    def is_homogeneous(self) -> bool:
        degrees = {self.ring.weighted_degree(e) for e in self.element}
        return len(degrees) <= 1

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        if not self.element:
            return -1
        return int(self.element.degree(i))

    def variables_used(self) -> List[str]:
        used = [False] * self.ring.nvars
        for exps in self.element:
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        return [v for v, flag in zip(self.ring.variables, used) if flag]

    def coefficients_in(self, name: str) -> Dict[int, "MultiPoly"]:
        """Split into powers of one variable: {k: coefficient of name^k}"""
        i = self.ring.index(name)
        powers = {exps[i] for exps in self.element}
        return {k: MultiPoly._wrap(self.ring, self.element.coeff_wrt(i, k)) for k in powers}

    def leading_term(self) -> Tuple[Exponent, Scalar]:
        if not self.element:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.element, key=self.ring.order_key)
        return exps, self.ring.coeff.from_domain(self.element[exps])

    def content(self) -> Scalar:
        """gcd of the coefficients over Z (1 over fields, 0 for zero)"""
        if not self.element:
            return 0
        if self.ring.coeff.kind != CoeffKind.integer:
            return 1
        return int(self.element.content())

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "MultiPoly") -> None:
        if self.ring != other.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other) -> "MultiPoly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return MultiPoly._wrap(self.ring, self.element + other.element)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._wrap(self.ring, -self.element)

    def __sub__(self, other) -> "MultiPoly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return MultiPoly._wrap(self.ring, self.element - other.element)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def scale(self, value: Scalar) -> "MultiPoly":
        return MultiPoly._wrap(self.ring, self.element.mul_ground(self.ring.coeff.to_domain(value)))

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        return MultiPoly._wrap(self.ring, self.element * other.element)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if isinstance(k, bool) or not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        if k == 0:
            return self.ring.one()
        return MultiPoly._wrap(self.ring, self.element ** k)

    def mul_monomial(self, exps: Exponent, value: Scalar = 1) -> "MultiPoly":
        return MultiPoly._wrap(self.ring, self.element * self.ring.monomial(exps, value).element)

    def monomial_gcd(self) -> Exponent:
        """Componentwise minimum exponent over all terms"""
        if not self.element:
            return (0,) * self.ring.nvars
        return tuple(min(col) for col in zip(*self.element))

    def div_monomial(self, exps: Exponent) -> "MultiPoly":
        out = {}
        for e, v in self.element.items():
            shifted = tuple(a - b for a, b in zip(e, exps))
            if any(s < 0 for s in shifted):
                raise ValueError("monomial does not divide the polynomial")
            out[shifted] = v
        return self._from_items(out)

    # -- substitution and ring changes -------------------------------------

    def compose(self, images: Sequence["MultiPoly"], target: PolyRing) -> "MultiPoly":
        """Substitute images[i] for the i-th variable; result lives in target"""
        if len(images) != self.ring.nvars:
            raise RingMismatchError("one image per variable is required")
        for image in images:
            if image.ring != target:
                raise RingMismatchError(f"image {image} does not live in {target}")
        same_coeff = target.coeff == self.ring.coeff
        powers: List[Dict[int, PolyElement]] = [{0: target.backend.one, 1: img.element} for img in images]

        def power(i: int, k: int) -> PolyElement:
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i].element
            return cache[k]

        result = target.backend.zero
        for exps, value in self.element.items():
            if same_coeff:
                term = target.backend.ground_new(value)
            else:
                term = target.constant(self.ring.coeff.from_domain(value)).element
            for i, k in enumerate(exps):
                if k:
                    term = term * power(i, k)
            result = result + term
        return MultiPoly._wrap(target, result)

    def subs(self, mapping: Mapping[str, Union["MultiPoly", Scalar]]) -> "MultiPoly":
        """Substitute polynomials (of the same ring) or scalars for named variables"""
        images = []
        for name in self.ring.variables:
            if name in mapping:
                value = mapping[name]
                images.append(value if isinstance(value, MultiPoly) else self.ring.constant(value))
            else:
                images.append(self.ring.gen(name))
        for name in mapping:
            self.ring.index(name)
        return self.compose(images, self.ring)

    def evaluate(self, values: Mapping[str, Scalar]) -> Scalar:
        """Evaluate at a full assignment of coefficient-ring values"""
        coeff = self.ring.coeff
        point = [coeff.to_domain(values[name]) if name in values else None for name in self.ring.variables]
        total = coeff.domain.zero
        for exps, value in self.element.items():
            term = value
            for i, k in enumerate(exps):
                if k:
                    if point[i] is None:
                        raise UnknownVariableError(self.ring.variables[i])
                    term = term * point[i] ** k
            total += term
        return coeff.from_domain(total)

    def change_ring(self, coeff: CoeffRing) -> "MultiPoly":
        """Reinterpret coefficients over another coefficient ring (Z->Q, Z/Q->Fp)"""
        source = self.ring.coeff
        if source == coeff:
            return self
        if source.kind == CoeffKind.prime:
            raise RingMismatchError(f"cannot lift coefficients from {source} to {coeff}")
        return MultiPoly(self.ring.with_coeff(coeff), self.term_map())

    def embed(self, target: PolyRing) -> "MultiPoly":
        """Move into a ring that shares variable names (missing variables must not occur)"""
        if target.coeff != self.ring.coeff:
            raise RingMismatchError(f"coefficient mismatch: {self.ring.coeff} vs {target.coeff}")
        slots = [target.index(name) if target.has(name) else None for name in self.ring.variables]
        out = {}
        for exps, value in self.element.items():
            new = [0] * target.nvars
            for i, k in enumerate(exps):
                if k:
                    if slots[i] is None:
                        raise RingMismatchError(f"variable {self.ring.variables[i]} is not in {target}")
                    new[slots[i]] = k
            out[tuple(new)] = value
        return MultiPoly._wrap(target, target.backend.from_dict(out))

    # -- comparison and printing -------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and dict.__eq__(self.element, other.element)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.element.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.element)

    def iter_monomials(self) -> Iterator[Exponent]:
        for exps, _ in self.terms():
            yield exps

    def to_text(self) -> str:
        """Render with ^ powers in graded-lex descending order (prime fields unsigned)"""
        if not self.element:
            return "0"
        names = self.ring.variables
        signed = self.ring.coeff.kind != CoeffKind.prime
        pieces = []
        for exps, value in self.terms():
            negative = signed and value < 0
            magnitude = -value if negative else value
            factors = [name if k == 1 else f"{name}^{k}" for name, k in zip(names, exps) if k]
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(magnitude)] + factors)
            if not pieces:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f" - {body}" if negative else f" + {body}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"MultiPoly({self.ring}, {self.to_text()!r})"
