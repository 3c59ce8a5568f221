# gslice/services/action.py
"""Linearized group actions as substitution maps with det-power denominators."""
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from gslice.core.errors import (
    DivisionError,
    InconsistentComponentError,
    NotHomogeneousError,
    RingMismatchError,
)
from gslice.ring.coeffs import CoeffKind, CoeffRing, Scalar
from gslice.ring.division import exact_quotient, split_linear, substitute_linear
from gslice.ring.poly import Exponent, MultiPoly, PolyRing

logger = logging.getLogger(__name__)

GroupElement = Dict[str, Scalar]


@dataclass(frozen=True)
class Image:
    numerator: MultiPoly
    det_power: int


@dataclass(frozen=True)
class ActionMap:
    """sigma^*: each source variable maps to numerator / det^det_power.

    ``character`` is the det exponent the linearization attaches per unit of
    degree: invariance of a degree-d form f means
    numerator = f * det^(det_power + character * d).
    """

    source: PolyRing
    group: PolyRing
    images: Tuple[Image, ...]
    det: MultiPoly
    character: Fraction = Fraction(0)
    label: str = ""
    mixed: PolyRing = field(default=None, init=False, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.source.coeff != self.group.coeff:
            raise RingMismatchError("source and group rings need the same coefficients")
        clash = set(self.source.variables) & set(self.group.variables)
        if clash:
            raise RingMismatchError(f"variables shared by source and group: {sorted(clash)}")
        if any(w != 1 for w in self.source.weights):
            raise RingMismatchError("actions are defined on standard-graded source rings")
        mixed = self.source.extend(self.group.variables)
        object.__setattr__(self, "mixed", mixed)
        object.__setattr__(self, "character", Fraction(self.character))
        if len(self.images) != self.source.nvars:
            raise RingMismatchError("one image per source variable is required")
        nsrc = self.source.nvars
        for name, image in zip(self.source.variables, self.images):
            if image.numerator.ring != mixed:
                raise RingMismatchError(f"image of {name} is not in {mixed}")
            if image.det_power < 0:
                raise RingMismatchError(f"negative det power for {name}")
            if any(sum(exps[:nsrc]) != 1 for exps in image.numerator.term_map()):
                raise NotHomogeneousError(f"image of {name} is not linear in the source variables")
        if self.det.ring != mixed:
            raise RingMismatchError("det must live in the mixed ring")
        if self.det.is_zero():
            raise RingMismatchError("det must be a nonzero polynomial")
        if any(any(exps[:nsrc]) for exps in self.det.term_map()):
            raise RingMismatchError("det may only involve group variables")

    @classmethod
    def build(cls, source: PolyRing, group: PolyRing, images: Mapping[str, Tuple[Union[str, MultiPoly], int]],
              det: Union[str, MultiPoly], character: Scalar = 0, label: str = "") -> "ActionMap":
        """Assemble an action from image texts (or polynomials) in the mixed ring"""
        mixed = source.extend(group.variables)

        def as_poly(value):
            return mixed.parse(value) if isinstance(value, str) else value.embed(mixed)

        missing = [v for v in source.variables if v not in images]
        if missing:
            raise RingMismatchError(f"no image given for {missing}")
        built = tuple(Image(as_poly(images[v][0]), images[v][1]) for v in source.variables)
        return cls(source, group, built, as_poly(det), Fraction(character), label)

    def image(self, name: str) -> Image:
        return self.images[self.source.index(name)]

    def change_ring(self, coeff: CoeffRing) -> "ActionMap":
        """The same action over another coefficient ring (Z->Q, Z->F_p)"""
        if coeff == self.source.coeff:
            return self
        source = self.source.with_coeff(coeff)
        group = self.group.with_coeff(coeff)
        images = tuple(Image(img.numerator.change_ring(coeff), img.det_power) for img in self.images)
        return ActionMap(source, group, images, self.det.change_ring(coeff), self.character, self.label)

    def as_component(self) -> "ComponentAction":
        return restrict_action(self, [], [])


@dataclass(frozen=True)
class PulledSection:
    """numerator / det^det_power"""

    numerator: MultiPoly
    det_power: int
    det: MultiPoly = field(compare=False, repr=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PulledSection):
            return NotImplemented
        left = self.numerator * other.det ** other.det_power
        right = other.numerator * self.det ** self.det_power
        return left == right

    def __hash__(self):
        raise TypeError("PulledSection compares by cross-multiplication and is unhashable")

    def __mul__(self, other: "PulledSection") -> "PulledSection":
        return PulledSection(self.numerator * other.numerator, self.det_power + other.det_power, self.det)


def _require_homogeneous(action_source: PolyRing, f: MultiPoly) -> int:
    if f.ring != action_source:
        raise RingMismatchError(f"ring mismatch: {f.ring} vs {action_source}")
    if not f.is_homogeneous():
        raise NotHomogeneousError(f"{f} is not homogeneous")
    return max(f.degree(), 0)


def act_on_poly(action: ActionMap, f: MultiPoly) -> PulledSection:
    """Substitute the images into a homogeneous f; det_power = d * max image det power"""
    d = _require_homogeneous(action.source, f)
    top = d * max((img.det_power for img in action.images), default=0)
    mixed = action.mixed
    powers: Dict[int, MultiPoly] = {}

    def det_power(k: int) -> MultiPoly:
        if k not in powers:
            powers[k] = action.det ** k
        return powers[k]

    puller = SectionPuller([ScaledSection(img.numerator, (img.det_power,)) for img in action.images],
                           ScaledSection(mixed.one(), (0,)))
    numerator = mixed.zero()
    for exps, value in f.term_map().items():
        pulled = puller.monomial(exps)
        numerator = numerator + pulled.numerator.scale(value) * det_power(top - pulled.powers[0])
    return PulledSection(numerator, top, action.det)


def _character_power(character: Fraction, d: int) -> Optional[int]:
    e = character * d
    return int(e) if e.denominator == 1 else None


def is_invariant(action: ActionMap, f: MultiPoly) -> bool:
    """Exact invariance test: numerator == f * det^(det_power + character*d)"""
    pulled = act_on_poly(action, f)
    if f.is_zero():
        return True
    e = _character_power(action.character, f.degree())
    if e is None:
        return False
    lifted = f.embed(action.mixed)
    total = pulled.det_power + e
    if total >= 0:
        return pulled.numerator == lifted * action.det ** total
    return pulled.numerator * action.det ** (-total) == lifted


# -- sections with several denominator atoms --------------------------------

@dataclass(frozen=True)
class ScaledSection:
    """numerator / prod(atoms[j] ** powers[j]) for a fixed tuple of atoms"""

    numerator: MultiPoly
    powers: Tuple[int, ...]

    def __mul__(self, other: "ScaledSection") -> "ScaledSection":
        return ScaledSection(self.numerator * other.numerator,
                             tuple(a + b for a, b in zip(self.powers, other.powers)))


class SectionPuller:
    """Memoised pull-back of monomials: product of images, built one factor at a time."""

    def __init__(self, images: Sequence[ScaledSection], one: ScaledSection):
        self.images = list(images)
        self.cache: Dict[Exponent, ScaledSection] = {(0,) * len(self.images): one}

    def monomial(self, exps: Exponent) -> ScaledSection:
        exps = tuple(exps)
        cached = self.cache.get(exps)
        if cached is not None:
            return cached
        i = max(k for k, e in enumerate(exps) if e)
        previous = exps[:i] + (exps[i] - 1,) + exps[i + 1:]
        result = self.monomial(previous) * self.images[i]
        self.cache[exps] = result
        return result


@dataclass(frozen=True)
class ComponentRelation:
    """A relation of a groupoid component, linear in its leading group variable"""

    poly: MultiPoly
    lead: str

    def __str__(self) -> str:
        return f"{self.poly} @ {self.lead}"


@dataclass(frozen=True)
class Elimination:
    lead: str
    coefficient: MultiPoly  # lead coefficient of the relation
    tail: MultiPoly         # relation = coefficient * lead + tail


@dataclass(frozen=True)
class ComponentAction:
    """An action restricted to one component of a sliced groupoid.

    Leading variables of the relations are eliminated by substitution; the
    resulting denominators are tracked as powers of ``atoms`` (the relation
    lead coefficients followed by the reduced determinant).
    """

    source: PolyRing
    group: PolyRing
    mixed: PolyRing
    relations: Tuple[ComponentRelation, ...]
    eliminations: Tuple[Elimination, ...]
    atoms: Tuple[MultiPoly, ...]
    images: Tuple[ScaledSection, ...]
    det: ScaledSection
    character: Fraction
    killed: Tuple[str, ...] = ()

    def puller(self) -> SectionPuller:
        zero = (0,) * len(self.atoms)
        return SectionPuller(self.images, ScaledSection(self.mixed.one(), zero))

    def reduce(self, poly: MultiPoly) -> Tuple[MultiPoly, List[int]]:
        """Eliminate the leading variables from a mixed-ring polynomial"""
        powers = []
        for step in self.eliminations:
            poly, k = substitute_linear(poly, step.lead, step.coefficient, step.tail)
            powers.append(k)
        return poly, powers

    def lift(self, section: ScaledSection, target: Sequence[int]) -> MultiPoly:
        """Numerator of section rewritten over the common denominator atoms^target"""
        result = section.numerator
        for atom, have, want in zip(self.atoms, section.powers, target):
            if want < have:
                raise ValueError("target denominator is too small")
            if want > have:
                result = result * atom ** (want - have)
        return result

    def normalized(self, section: ScaledSection) -> ScaledSection:
        """Move negative atom powers into the numerator"""
        numerator = section.numerator
        powers = []
        for atom, p in zip(self.atoms, section.powers):
            if p < 0:
                numerator = numerator * atom ** (-p)
                p = 0
            powers.append(p)
        return ScaledSection(numerator, tuple(powers))

    def cancel(self, section: ScaledSection) -> ScaledSection:
        """Divide out atoms that divide the numerator exactly"""
        numerator = section.numerator
        powers = list(section.powers)
        for j, atom in enumerate(self.atoms):
            if atom == 1:
                powers[j] = 0
                continue
            while powers[j] > 0:
                quotient = exact_quotient(numerator, atom)
                if quotient is None:
                    break
                numerator = quotient
                powers[j] -= 1
        return ScaledSection(numerator, tuple(powers))

    def det_power(self, e: int) -> ScaledSection:
        """det^e as a scaled section (e may be negative)"""
        if e >= 0:
            return ScaledSection(self.det.numerator ** e, tuple(p * e for p in self.det.powers))
        r = len(self.eliminations)
        numerator = self.mixed.one()
        for atom, p in zip(self.atoms[:r], self.det.powers[:r]):
            numerator = numerator * atom ** (p * -e)
        return ScaledSection(numerator, (0,) * r + (-e,))

    def embed_source(self, f: MultiPoly) -> MultiPoly:
        if f.ring != self.source:
            raise RingMismatchError(f"ring mismatch: {f.ring} vs {self.source}")
        return f.embed(self.mixed)

    def pull(self, f: MultiPoly, puller: Optional[SectionPuller] = None) -> ScaledSection:
        """sigma^* f as a single scaled section"""
        puller = puller or self.puller()
        pieces = [(puller.monomial(exps), value) for exps, value in f.term_map().items()]
        if not pieces:
            return ScaledSection(self.mixed.zero(), (0,) * len(self.atoms))
        target = [max(col) for col in zip(*(p.powers for p, _ in pieces))]
        numerator = self.mixed.zero()
        for section, value in pieces:
            numerator = numerator + self.lift(section, target).scale(value)
        return ScaledSection(numerator, tuple(target))

    def residuals(self, monomials: Sequence[Exponent], degree: int,
                  puller: Optional[SectionPuller] = None) -> Optional[List[MultiPoly]]:
        """Cleared numerators of sigma^* m - m * det^(character*d), one per monomial.

        Returns None when character*d is not an integer (nothing of this
        degree can be invariant except 0).
        """
        e = _character_power(self.character, degree)
        if e is None:
            return None
        puller = puller or self.puller()
        scale = self.det_power(e)
        left = [puller.monomial(m) for m in monomials]
        right = [ScaledSection(self.mixed.monomial(tuple(m) + (0,) * self.group.nvars) * scale.numerator,
                               scale.powers) for m in monomials]
        if not left:
            return []
        target = [max(col) for col in zip(*(s.powers for s in left + right))]
        return [self.lift(a, target) - self.lift(b, target) for a, b in zip(left, right)]

    def maps_to(self, f: MultiPoly, g: MultiPoly) -> bool:
        """sigma^* f == g * det^(character*d) on this component (f, g homogeneous of degree d)"""
        d = _require_homogeneous(self.source, f)
        if f.is_zero() or g.is_zero():
            return f.is_zero() and g.is_zero()
        if _require_homogeneous(self.source, g) != d:
            return False
        e = _character_power(self.character, d)
        if e is None:
            return False
        pulled = self.pull(f)
        scale = self.det_power(e)
        expected = ScaledSection(self.embed_source(g) * scale.numerator, scale.powers)
        target = [max(a, b) for a, b in zip(pulled.powers, expected.powers)]
        return self.lift(pulled, target) == self.lift(expected, target)

    def is_invariant(self, f: MultiPoly) -> bool:
        """Invariance of a homogeneous f on this component"""
        return self.maps_to(f, f)

    def simplify(self, section: ScaledSection) -> Tuple[MultiPoly, MultiPoly]:
        """(numerator, denominator) in lowest terms where that is cheap to decide"""
        denominator = self.lift(ScaledSection(self.mixed.one(), (0,) * len(self.atoms)), section.powers)
        quotient = exact_quotient(section.numerator, denominator)
        if quotient is not None:
            return quotient, self.mixed.one()
        common = tuple(min(a, b) for a, b in zip(section.numerator.monomial_gcd(), denominator.monomial_gcd()))
        return section.numerator.div_monomial(common), denominator.div_monomial(common)

    def describe(self, section: ScaledSection) -> str:
        numerator, denominator = self.simplify(section)
        if denominator == self.mixed.one():
            return str(numerator)
        top = str(numerator) if len(numerator) == 1 else f"({numerator})"
        bottom = str(denominator) if len(denominator) == 1 else f"({denominator})"
        return f"{top}/{bottom}"

    def image_table(self) -> List[Tuple[str, str]]:
        return [(name, self.describe(img)) for name, img in zip(self.source.variables, self.images)]


def restrict_action(action: ActionMap, relations: Sequence[ComponentRelation],
                    kill: Sequence[str]) -> ComponentAction:
    """Restrict an action to the component cut out by relations, with kill set to zero"""
    for name in kill:
        action.source.index(name)
    surviving = action.source.without(kill)
    mixed = surviving.extend(action.group.variables)
    zero_kill = {name: 0 for name in kill}

    def to_mixed(poly: MultiPoly) -> MultiPoly:
        if poly.ring == mixed:
            return poly
        if poly.ring != action.mixed:
            raise RingMismatchError(f"relation {poly} is not in {action.mixed}")
        return (poly.subs(zero_kill) if zero_kill else poly).embed(mixed)

    eliminations: List[Elimination] = []
    reduced_relations = []
    for relation in relations:
        g = to_mixed(relation.poly)
        if not action.group.has(relation.lead):
            raise InconsistentComponentError(f"leading variable {relation.lead} is not a group variable")
        for step in eliminations:
            g, _ = substitute_linear(g, step.lead, step.coefficient, step.tail)
        if g.is_zero():
            raise InconsistentComponentError(f"relation {relation} is implied by the earlier relations")
        try:
            coefficient, tail = split_linear(g, relation.lead)
        except DivisionError as e:
            raise InconsistentComponentError(e.detail)
        eliminations.append(Elimination(relation.lead, coefficient, tail))
        reduced_relations.append(ComponentRelation(g, relation.lead))
    leads = {step.lead for step in eliminations}
    if len(leads) != len(eliminations):
        raise InconsistentComponentError("two relations share a leading variable")
    for step in eliminations:
        if leads & set(step.coefficient.variables_used()):
            raise InconsistentComponentError(f"lead coefficient {step.coefficient} involves an eliminated variable")

    def reduce(poly: MultiPoly) -> Tuple[MultiPoly, List[int]]:
        powers = []
        for step in eliminations:
            poly, k = substitute_linear(poly, step.lead, step.coefficient, step.tail)
            powers.append(k)
        return poly, powers

    det_numerator, det_powers = reduce(to_mixed(action.det))
    if det_numerator.is_zero():
        raise InconsistentComponentError("the determinant vanishes on this component")
    atoms = tuple(step.coefficient for step in eliminations) + (det_numerator,)
    r = len(eliminations)
    det = ScaledSection(det_numerator, tuple(det_powers) + (0,))

    for name in kill:
        residue, _ = reduce(to_mixed(action.image(name).numerator))
        if not residue.is_zero():
            raise InconsistentComponentError(f"image of {name} does not vanish on the component: {residue}")

    component = ComponentAction(surviving, action.group, mixed, tuple(reduced_relations), tuple(eliminations),
                                atoms, (), det, action.character, tuple(kill))
    images = []
    for name in surviving.variables:
        image = action.image(name)
        numerator, powers = reduce(to_mixed(image.numerator))
        k = image.det_power
        scaled = ScaledSection(numerator, tuple(powers[j] - k * det_powers[j] for j in range(r)) + (k,))
        images.append(component.cancel(component.normalized(scaled)))
    logger.debug(f"restricted {action.label or 'action'} to {len(relations)} relation(s), kill={list(kill)}")
    return ComponentAction(surviving, action.group, mixed, tuple(reduced_relations), tuple(eliminations),
                           atoms, tuple(images), det, action.character, tuple(kill))


# -- built-in group shapes ------------------------------------------------------

def torus_action(coeff: CoeffRing, weights: Mapping[str, int], parameter: str = "t") -> ActionMap:
    """Diagonal G_m action v -> t^w v (negative weights become det powers)"""
    source = PolyRing(coeff, tuple(weights))
    group = PolyRing(coeff, (parameter,))
    images = {}
    for name, w in weights.items():
        if w >= 0:
            images[name] = (f"{parameter}^{w}*{name}", 0)
        else:
            images[name] = (name, -w)
    return ActionMap.build(source, group, images, parameter, label="torus")


def gl2_multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    """Matrix product g*h for elements given by entries a, b, c, d"""
    return {
        "a": g["a"] * h["a"] + g["b"] * h["c"],
        "b": g["a"] * h["b"] + g["b"] * h["d"],
        "c": g["c"] * h["a"] + g["d"] * h["c"],
        "d": g["c"] * h["b"] + g["d"] * h["d"],
    }


def torus_multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    return {name: g[name] * h[name] for name in g}


def apply_numeric(action: ActionMap, element: GroupElement, point: Mapping[str, Scalar]) -> Dict[str, Scalar]:
    """Numeric value of sigma^*(v) at (point, element) for every source variable"""
    values = dict(point)
    values.update(element)
    coeff = action.source.coeff
    det = action.det.evaluate(values)
    if det == 0:
        raise ZeroDivisionError("group element has zero determinant")
    out = {}
    for name, image in zip(action.source.variables, action.images):
        out[name] = coeff.normalize(image.numerator.evaluate(values) * coeff.inverse(det) ** image.det_power)
    return out


def spot_check_action_law(action: ActionMap, multiply: Callable[[GroupElement, GroupElement], GroupElement],
                          rng: random.Random, trials: int = 10, bound: int = 5) -> bool:
    """Check rho(g)(rho(h)(x)) == rho(h*g)(x) at random rational points.

    Substitution actions compose contravariantly, so the product is taken
    in the order h*g.
    """
    if action.source.coeff.kind == CoeffKind.integer:
        action = action.change_ring(CoeffRing.rationals())
    prime = action.source.coeff.kind == CoeffKind.prime

    def sample(names):
        if prime:
            return {name: rng.randrange(action.source.coeff.modulus) for name in names}
        return {name: Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for name in names}

    checked = 0
    while checked < trials:
        g, h = sample(action.group.variables), sample(action.group.variables)
        point = sample(action.source.variables)
        try:
            inner = apply_numeric(action, h, point)
            composed = apply_numeric(action, g, inner)
            direct = apply_numeric(action, multiply(h, g), point)
        except ZeroDivisionError:
            continue
        if composed != direct:
            logger.error(f"action law fails at g={g}, h={h}, x={point}")
            return False
        checked += 1
    return True
