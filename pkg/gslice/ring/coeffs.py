# gslice/ring/coeffs.py
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Optional, Union

from sympy import GF, QQ, ZZ, isprime
from sympy.polys.domains.domain import Domain
from sympy.polys.polyerrors import ExactQuotientFailed, NotReversible

from gslice.core.errors import InvalidModulusError, RingMismatchError

Scalar = Union[int, Fraction]

MAX_MODULUS = 2 ** 31


class CoeffKind(str, Enum):
    integer = "Z"
    rational = "Q"
    prime = "Fp"


@lru_cache(maxsize=None)
def prime_domain(p: int) -> Domain:
    return GF(p, symmetric=False)


@dataclass(frozen=True)
class CoeffRing:
    """Coefficient ring: the integers, the rationals or a prime field.

    Arithmetic runs in the matching sympy domain (ZZ, QQ or GF(p)). At the
    API boundary elements are plain Python ints (integers, prime fields, kept
    in [0, p)) or ints and Fractions (rationals). No floating point is ever
    accepted.
    """

    kind: CoeffKind
    modulus: Optional[int] = None
    _domain: Domain = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.kind == CoeffKind.prime:
            p = self.modulus
            if isinstance(p, bool) or not isinstance(p, int) or p >= MAX_MODULUS or not isprime(p):
                raise InvalidModulusError(f"modulus must be a prime below 2^31, got {p!r}")
            domain = prime_domain(p)
        elif self.modulus is not None:
            raise InvalidModulusError(f"{self.kind.value} takes no modulus")
        else:
            domain = ZZ if self.kind == CoeffKind.integer else QQ
        object.__setattr__(self, "_domain", domain)

    def __reduce__(self):
        return (CoeffRing, (self.kind, self.modulus))

    @classmethod
    def integers(cls) -> "CoeffRing":
        return cls(CoeffKind.integer)

    @classmethod
    def rationals(cls) -> "CoeffRing":
        return cls(CoeffKind.rational)

    @classmethod
    def prime_field(cls, p: int) -> "CoeffRing":
        return cls(CoeffKind.prime, p)

    @classmethod
    def from_tag(cls, tag: str) -> "CoeffRing":
        """Parse a field tag: Z, Q, F2 or Fp:<p>"""
        text = tag.strip()
        if text == "Z":
            return cls.integers()
        if text == "Q":
            return cls.rationals()
        if text.startswith("Fp:"):
            digits = text[3:]
        elif text.startswith("F"):
            digits = text[1:]
        else:
            raise InvalidModulusError(f"unknown field tag {tag!r}")
        if not digits.isdigit():
            raise InvalidModulusError(f"unknown field tag {tag!r}")
        return cls.prime_field(int(digits))

    @property
    def tag(self) -> str:
        if self.kind == CoeffKind.prime:
            return "F2" if self.modulus == 2 else f"Fp:{self.modulus}"
        return self.kind.value

    @property
    def domain(self) -> Domain:
        """The sympy ground domain: ZZ, QQ or GF(p)"""
        return self._domain

    @property
    def is_field(self) -> bool:
        return self.kind != CoeffKind.integer

    @property
    def characteristic(self) -> int:
        return self.modulus if self.kind == CoeffKind.prime else 0

    def convert(self, value: Scalar) -> Scalar:
        """Map an int or Fraction into this ring's canonical representation"""
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise RingMismatchError(f"cannot use {value!r} as a coefficient")
        if self.kind == CoeffKind.integer:
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise RingMismatchError(f"{value} is not an integer")
                return value.numerator
            return value
        if self.kind == CoeffKind.rational:
            if isinstance(value, Fraction) and value.denominator == 1:
                return value.numerator
            return value
        p = self.modulus
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise RingMismatchError(f"{value} has a denominator divisible by {p}")
            return self.from_domain(self._domain(value.numerator) / self._domain(value.denominator))
        return value % p

    def to_domain(self, value: Scalar) -> Any:
        """Python scalar -> element of the sympy domain"""
        value = self.convert(value)
        if self.kind == CoeffKind.rational:
            value = Fraction(value)
            return self._domain(value.numerator, value.denominator)
        return self._domain(value)

    def from_domain(self, element: Any) -> Scalar:
        """Element of the sympy domain -> Python scalar"""
        if self.kind == CoeffKind.rational:
            num, den = int(element.numerator), int(element.denominator)
            return num if den == 1 else Fraction(num, den)
        return int(element)

    def normalize(self, value: Scalar) -> Scalar:
        """Canonical form of a result of + - * on canonical elements"""
        if self.kind == CoeffKind.prime:
            return value % self.modulus
        if isinstance(value, Fraction) and value.denominator == 1:
            return value.numerator
        return value

    def inverse(self, value: Scalar) -> Scalar:
        if value == 0:
            raise ZeroDivisionError("zero has no inverse")
        try:
            return self.from_domain(self._domain.revert(self.to_domain(value)))
        except NotReversible:
            raise ZeroDivisionError(f"{value} is not a unit in {self.tag}")

    def exact_div(self, a: Scalar, b: Scalar) -> Optional[Scalar]:
        """a / b inside the ring, or None when b does not divide a"""
        if b == 0:
            raise ZeroDivisionError("division by zero")
        try:
            return self.from_domain(self._domain.exquo(self.to_domain(a), self.to_domain(b)))
        except ExactQuotientFailed:
            return None

    def gcd(self, a: Scalar, b: Scalar) -> Scalar:
        if self.kind == CoeffKind.integer:
            return int(ZZ.gcd(ZZ(a), ZZ(b)))
        return 1 if (a != 0 or b != 0) else 0

    def format(self, value: Scalar) -> str:
        return str(value)

    def __str__(self) -> str:
        return self.tag
