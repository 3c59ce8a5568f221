# gslice/models/kontsevich.py
"""Pairs of binary quadratic forms under PGL2: the degree-2 stable maps model."""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Tuple

from gslice.core.errors import NotHomogeneousError, RingMismatchError
from gslice.ring.coeffs import CoeffKind, CoeffRing, Scalar
from gslice.ring.poly import MultiPoly, PolyRing
from gslice.schemas.slice import SliceSpec
from gslice.services.action import ActionMap, GroupElement, apply_numeric
from gslice.services.invariants import Presentation, as_generators
from gslice.services.slicing import SlicedGroupoid, build_slice

logger = logging.getLogger(__name__)

SOURCE = ("A1", "B1", "C1", "A2", "B2", "C2")
GROUP = ("a", "b", "c", "d")
FORM_VARIABLES = ("x", "y")

INVARIANT_TEXTS = {
    "Delta1": "B1^2 - 4*A1*C1",
    "Delta2": "B2^2 - 4*A2*C2",
    "Delta12": "(B1 + B2)^2 - 4*(A1 + A2)*(C1 + C2)",
    "Gamma": "B1*B2 - 2*A1*C2 - 2*C1*A2",
    "Lambda": "(A1*C2 - A2*C1)^2 - (A1*B2 - A2*B1)*(B1*C2 - B2*C1)",
}

# generators of the invariant ring in characteristic 0 (over Z with Lambda)
GENERATORS = ("Delta1", "Delta2", "Gamma", "Lambda")

# restrictions to the slice A1 = C2 = 0
SLICE_RESTRICTIONS = {
    "Delta1": "B1^2",
    "Delta2": "B2^2",
    "Delta12": "(B1 + B2)^2 - 4*C1*A2",
    "Gamma": "B1*B2 - 2*C1*A2",
    "Lambda": "C1*A2*(C1*A2 - B1*B2)",
}

# Lambda reduced mod 2
LAMBDA_CHAR2 = "(A1*C2 + C1*A2)^2 + (A1*C2 + C1*A2)*B1*B2 + A1*C1*B2^2 + A2*C2*B1^2"

SLICE = SliceSpec(
    vanish=["A1", "C2"],
    avoid=[["B1", "C1"], ["A2", "B2"]],
    components=[
        ["b", "c"],
        ["c", "A2*b + B2*d @ b"],
        ["b", "B1*a + C1*c @ a"],
        ["B1*a + C1*c @ a", "A2*b + B2*d @ b"],
    ],
    labels=["R1", "R2", "R3", "R4"],
    codimension="the complement of the image of W has codimension 3",
)

# generators of S1 and of the intersection over R1, R2, R4, as slice polynomials
S1_GENERATORS = ("B1", "B2", "C1*A2")
S124_GENERATORS = ("B1^2", "B2^2", "2*C1*A2 - B1*B2", "C1*A2*(C1*A2 - B1*B2)")

# the fibre of the slice over A1 = 0 has associated points (c) and (B1*a + C1*c)
FIBER_FACTORS = ("c", "B1*a + C1*c @ a")

VERONESE_GENERATORS = {f"V{k}": f"B1^{4 - k}*B2^{k}" for k in range(5)}


def source_ring(coeff: CoeffRing) -> PolyRing:
    return PolyRing(coeff, SOURCE)


def kontsevich_action(coeff: CoeffRing) -> ActionMap:
    """PGL2 acting on the coefficients of (s1, s2) by substitution, divided by ad - bc"""
    images = {}
    for i in ("1", "2"):
        a, b, c = f"A{i}", f"B{i}", f"C{i}"
        images[a] = (f"{a}*a^2 + {b}*a*c + {c}*c^2", 1)
        images[b] = (f"2*{a}*a*b + {b}*(a*d + b*c) + 2*{c}*c*d", 1)
        images[c] = (f"{a}*b^2 + {b}*b*d + {c}*d^2", 1)
    return ActionMap.build(source_ring(coeff), PolyRing(coeff, GROUP), images, "a*d - b*c", label="kontsevich")


def classical_invariants(coeff: CoeffRing) -> Dict[str, MultiPoly]:
    ring = source_ring(coeff)
    return {name: ring.parse(text) for name, text in INVARIANT_TEXTS.items()}


def generator_invariants(coeff: CoeffRing) -> Dict[str, MultiPoly]:
    invariants = classical_invariants(coeff)
    return {name: invariants[name] for name in GENERATORS}


def kontsevich_slice(coeff: CoeffRing) -> SlicedGroupoid:
    return build_slice(kontsevich_action(coeff), SLICE)


def slice_ring(coeff: CoeffRing) -> PolyRing:
    return source_ring(coeff).without(SLICE.vanish)


def restrict_to_slice(f: MultiPoly) -> MultiPoly:
    """Set A1 = C2 = 0"""
    ring = f.ring.without(SLICE.vanish)
    return f.subs({name: 0 for name in SLICE.vanish}).embed(ring)


def slice_restrictions(coeff: CoeffRing) -> Dict[str, MultiPoly]:
    return {name: restrict_to_slice(f) for name, f in classical_invariants(coeff).items()}


def slice_polys(coeff: CoeffRing, texts) -> List[MultiPoly]:
    ring = slice_ring(coeff)
    return [ring.parse(text) for text in texts]


def veronese_generators(coeff: CoeffRing) -> Dict[str, MultiPoly]:
    ring = slice_ring(coeff)
    return {name: ring.parse(text) for name, text in VERONESE_GENERATORS.items()}


def slice_presentation(coeff: CoeffRing, texts) -> Presentation:
    """Free presentation on slice polynomials g1, g2, ... weighted by their degrees"""
    return Presentation(as_generators({f"g{i + 1}": f for i, f in enumerate(slice_polys(coeff, texts))}))


# -- points and classification ---------------------------------------------------

class StabilityClass(str, Enum):
    unstable = "unstable"
    strictly_semistable = "strictly-semistable"
    properly_stable = "properly-stable"


@dataclass(frozen=True)
class SectionPair:
    """Two binary quadratic forms s1, s2 in x, y"""

    s1: MultiPoly
    s2: MultiPoly

    def __post_init__(self):
        if self.s1.ring != self.s2.ring:
            raise RingMismatchError("both forms must live in the same ring")
        if self.s1.ring.variables != FORM_VARIABLES:
            raise RingMismatchError(f"forms must be written in {FORM_VARIABLES}")
        for s in (self.s1, self.s2):
            if not s.is_zero() and (not s.is_homogeneous() or s.degree() != 2):
                raise NotHomogeneousError(f"{s} is not a quadratic form")

    @classmethod
    def parse(cls, s1: str, s2: str, characteristic: int = 0) -> "SectionPair":
        coeff = CoeffRing.rationals() if characteristic == 0 else CoeffRing.prime_field(characteristic)
        ring = PolyRing(coeff, FORM_VARIABLES)
        return cls(ring.parse(s1), ring.parse(s2))

    @classmethod
    def from_coefficients(cls, values: Dict[str, Scalar], coeff: CoeffRing) -> "SectionPair":
        ring = PolyRing(coeff, FORM_VARIABLES)
        forms = []
        for i in ("1", "2"):
            forms.append(MultiPoly(ring, {(2, 0): values[f"A{i}"], (1, 1): values[f"B{i}"], (0, 2): values[f"C{i}"]}))
        return cls(*forms)

    @property
    def coeff(self) -> CoeffRing:
        return self.s1.ring.coeff

    def coefficients(self) -> Dict[str, Scalar]:
        out = {}
        for i, s in (("1", self.s1), ("2", self.s2)):
            out[f"A{i}"] = s.coefficient((2, 0))
            out[f"B{i}"] = s.coefficient((1, 1))
            out[f"C{i}"] = s.coefficient((0, 2))
        return out

    def is_zero(self) -> bool:
        return self.s1.is_zero() and self.s2.is_zero()

    def proportional_to(self, other: "SectionPair") -> bool:
        """Same point of the projective space of pairs"""
        mine, theirs = self.coefficients(), other.coefficients()
        return all(mine[u] * theirs[v] == mine[v] * theirs[u] for u in SOURCE for v in SOURCE)


@dataclass
class Classification:
    label: StabilityClass
    characteristic: int
    values: Dict[str, Scalar]
    zero_pair: bool = False


def evaluate_invariants(pair: SectionPair) -> Dict[str, Scalar]:
    point = pair.coefficients()
    return {name: f.evaluate(point) for name, f in classical_invariants(pair.coeff).items()}


def classify_point(pair: SectionPair) -> Classification:
    """Unstable / strictly semistable / properly stable from the invariant values"""
    characteristic = pair.coeff.characteristic
    values = evaluate_invariants(pair)
    if characteristic == 2:
        coefficients = pair.coefficients()
        values = {"B1": coefficients["B1"], "B2": coefficients["B2"], "Lambda": values["Lambda"]}
        semistable = any(values.values())
    elif characteristic == 0:
        semistable = any(values[name] for name in ("Delta1", "Delta2", "Gamma", "Lambda"))
    else:
        raise RingMismatchError(f"classification is implemented in characteristic 0 and 2, not {characteristic}")
    if pair.is_zero():
        logger.warning("both sections are zero; classified as unstable")
    if not semistable:
        label = StabilityClass.unstable
    elif values["Lambda"] != 0:
        label = StabilityClass.properly_stable
    else:
        label = StabilityClass.strictly_semistable
    return Classification(label, characteristic, values, pair.is_zero())


def act_on_pair(pair: SectionPair, g: GroupElement) -> SectionPair:
    """(s1, s2) composed with g, over det g"""
    action = kontsevich_action(pair.coeff)
    moved = apply_numeric(action, g, pair.coefficients())
    return SectionPair.from_coefficients(moved, pair.coeff)


def stabilizer_equations(pair: SectionPair) -> List[MultiPoly]:
    """Equations on (a, b, c, d) for g to fix the point of pair, up to sign"""
    coeff = pair.coeff
    action = kontsevich_action(coeff)
    group = action.group
    point = pair.coefficients()
    pulled = {}
    for name, image in zip(SOURCE, action.images):
        pulled[name] = image.numerator.subs({v: point[v] for v in SOURCE}).embed(group)
    equations = []
    for i, u in enumerate(SOURCE):
        for v in SOURCE[i + 1:]:
            eq = pulled[u].scale(point[v]) - pulled[v].scale(point[u])
            if eq.is_zero():
                continue
            if coeff.kind != CoeffKind.prime and eq.leading_term()[1] < 0:
                eq = -eq
            if eq not in equations:
                equations.append(eq)
    return equations


def char2_representatives() -> Dict[str, Tuple[str, str]]:
    """Representative pairs in characteristic 2"""
    return {
        "strictly-semistable": ("x*y", "x*(x + y)"),
        "totally-ramified": ("x^2", "y^2"),
    }

