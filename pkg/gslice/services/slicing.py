# gslice/services/slicing.py
"""Restriction of an action groupoid to a slice and per-component equalizers."""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from gslice.core.errors import (
    DivisionError,
    DuplicateComponentError,
    InconsistentComponentError,
    ShapeError,
    SpecFileError,
)
from gslice.ring.coeffs import CoeffKind, CoeffRing
from gslice.ring.division import pseudo_divide
from gslice.ring.poly import MultiPoly, PolyRing
from gslice.schemas.slice import SliceSpec
from gslice.services.action import ActionMap, ComponentAction, ComponentRelation, act_on_poly, restrict_action
from gslice.services.invariants import (
    GradedBasis,
    basis_from_rows,
    equalizer_rows,
    integer_saturate,
    working_field,
)

logger = logging.getLogger(__name__)


def parse_relation(action: ActionMap, text: str) -> ComponentRelation:
    """Parse 'poly' or 'poly @ lead' in the mixed ring of the action"""
    body, marker, lead = text.partition("@")
    poly = action.mixed.parse(body)
    lead = lead.strip()
    if marker and not lead:
        raise SpecFileError(f"missing leading variable in {text!r}")
    if not lead:
        lead = next((v for v in action.group.variables if poly.degree_in(v) > 0), "")
        if not lead:
            raise DivisionError(f"relation {poly} involves no group variable")
    if not action.group.has(lead):
        raise SpecFileError(f"leading variable {lead} is not a group variable")
    if poly.degree_in(lead) <= 0:
        raise DivisionError(f"relation {poly} is constant in {lead}")
    return ComponentRelation(poly, lead)


def canonical_relation(poly: MultiPoly) -> MultiPoly:
    """Primitive representative up to units (monic over fields)"""
    _, lead = poly.leading_term()
    coeff = poly.ring.coeff
    if coeff.is_field:
        return poly.scale(coeff.inverse(lead))
    content = poly.content() if lead > 0 else -poly.content()
    return MultiPoly(poly.ring, {e: v // content for e, v in poly.term_map().items()})


@dataclass(frozen=True)
class SliceComponent:
    label: str
    texts: Tuple[str, ...]
    relations: Tuple[ComponentRelation, ...]
    action: ComponentAction
    source_action: ActionMap = field(repr=False)

    def over(self, coeff: CoeffRing) -> "SliceComponent":
        if coeff == self.action.source.coeff:
            return self
        return _build_component(self.source_action.change_ring(coeff), self.label, self.texts, self.action.killed)

    def is_invariant(self, f: MultiPoly) -> bool:
        return self.action.is_invariant(f)

    def maps_to(self, f: MultiPoly, g: MultiPoly) -> bool:
        return self.action.maps_to(f, g)

    def image_table(self) -> List[Tuple[str, str]]:
        return self.action.image_table()


@dataclass
class SlicedGroupoid:
    """R|_W as a list of components, each with its restricted action"""

    source_action: ActionMap
    spec: SliceSpec
    ring: PolyRing
    components: List[SliceComponent]

    def over(self, coeff: CoeffRing) -> "SlicedGroupoid":
        if coeff == self.ring.coeff:
            return self
        return build_slice(self.source_action.change_ring(coeff), self.spec)

    def component(self, label: str) -> SliceComponent:
        for component in self.components:
            if component.label == label:
                return component
        raise SpecFileError(f"no component labelled {label!r}; have {', '.join(c.label for c in self.components)}")

    def select(self, labels: Optional[Sequence[str]]) -> List[SliceComponent]:
        if labels is None:
            return list(self.components)
        return [self.component(label) for label in labels]

    def restrict(self, f: MultiPoly) -> MultiPoly:
        """Restriction of a section to the slice (vanishing variables set to 0)"""
        zero = {name: 0 for name in self.spec.vanish}
        return (f.subs(zero) if zero else f).embed(self.ring)


def _build_component(action: ActionMap, label: str, texts: Sequence[str], kill: Sequence[str]) -> SliceComponent:
    relations = [parse_relation(action, text) for text in texts]
    zero = {name: 0 for name in kill}
    for name in kill:
        remainder = action.image(name).numerator.subs(zero)
        for relation in relations:
            g = relation.poly.subs(zero) if zero else relation.poly
            if remainder.degree_in(relation.lead) >= g.degree_in(relation.lead):
                remainder = pseudo_divide(remainder, g, relation.lead).remainder
        if not remainder.is_zero():
            raise InconsistentComponentError(f"{label}: image of {name} does not reduce to zero ({remainder})")
    restricted = restrict_action(action, relations, kill)
    return SliceComponent(label, tuple(texts), tuple(relations), restricted, action)


def build_slice(action: ActionMap, spec: SliceSpec) -> SlicedGroupoid:
    """Restrict the action groupoid to the slice described by spec"""
    for name in spec.vanish:
        action.source.index(name)
    for group in spec.avoid:
        for name in group:
            action.source.index(name)
    texts = spec.components or [[]]
    labels = spec.component_labels() if spec.components else ["R1"]
    seen: Dict[frozenset, str] = {}
    components = []
    for label, relation_texts in zip(labels, texts):
        component = _build_component(action, label, relation_texts, spec.vanish)
        key = frozenset(canonical_relation(r.poly) for r in component.relations)
        if key in seen:
            raise DuplicateComponentError(f"components {seen[key]} and {label} coincide")
        seen[key] = label
        components.append(component)
    ring = action.source.without(spec.vanish)
    logger.info(f"slice {spec.vanish or '[]'} of {action.label or 'action'}: {len(components)} component(s) on {ring}")
    return SlicedGroupoid(action, spec, ring, components)


def component_equalizer_basis(component: SliceComponent, d: int, field: Optional[CoeffRing] = None) -> GradedBasis:
    """Degree-d sections invariant on one component"""
    field = field or component.action.source.coeff
    work = component.over(working_field(field))
    monomials, rows = equalizer_rows([work.action], d)
    basis = basis_from_rows(work.action.source, d, monomials, rows)
    return integer_saturate(basis) if field.kind == CoeffKind.integer else basis


def intersect_equalizers(groupoid: SlicedGroupoid, d: int, field: Optional[CoeffRing] = None,
                         labels: Optional[Sequence[str]] = None) -> GradedBasis:
    """Degree-d sections invariant on every (selected) component; saturated over Z"""
    field = field or groupoid.ring.coeff
    started = time.perf_counter()
    work = groupoid.over(working_field(field))
    components = work.select(labels)
    monomials, rows = equalizer_rows([c.action for c in components], d)
    basis = basis_from_rows(work.ring, d, monomials, rows)
    if field.kind == CoeffKind.integer:
        basis = integer_saturate(basis)
    logger.info(f"sliced invariants over {field}: d={d} dim={basis.dim} ({time.perf_counter() - started:.2f}s)")
    return basis


def _sliced_dim(job) -> int:
    groupoid, d, field, labels = job
    return intersect_equalizers(groupoid, d, field, labels).dim


def sliced_hilbert_function(groupoid: SlicedGroupoid, d_max: int, field: Optional[CoeffRing] = None,
                            workers: int = 1, labels: Optional[Sequence[str]] = None) -> List[int]:
    field = working_field(field or groupoid.ring.coeff)
    work = groupoid.over(field)
    jobs = [(work, d, field, labels) for d in range(d_max + 1)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_sliced_dim, jobs))
    return [_sliced_dim(job) for job in jobs]


@dataclass
class FlatnessReport:
    flat: bool
    degenerate: bool
    pulled: MultiPoly
    remainders: Dict[str, MultiPoly] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.flat


def flatness_check(action: ActionMap, vanish: Sequence[str], factors: Sequence[str],
                   test_poly: MultiPoly) -> FlatnessReport:
    """Does sigma^*(test_poly), restricted to the slice, avoid every associated point?

    Each factor ('poly @ lead') is a principal associated prime of the
    fiber; the pulled section must not be divisible by any of them.
    """
    zero = {name: 0 for name in vanish}
    pulled = act_on_poly(action, test_poly).numerator
    pulled = pulled.subs(zero) if zero else pulled
    relations = [parse_relation(action, text) for text in factors]
    if pulled.is_zero():
        logger.warning(f"degenerate fiber: sigma^*({test_poly}) vanishes identically on {list(vanish)}")
        return FlatnessReport(False, True, pulled, {})
    remainders = {}
    for text, relation in zip(factors, relations):
        g = relation.poly.subs(zero) if zero else relation.poly
        remainders[text] = pseudo_divide(pulled, g, relation.lead).remainder
    flat = all(not r.is_zero() for r in remainders.values())
    return FlatnessReport(flat, False, pulled, remainders)


def torus_weights(component: SliceComponent) -> Dict[str, Tuple[int, ...]]:
    """Group-monomial weight of every variable, for diagonal restricted actions"""
    action = component.action
    nsrc = action.source.nvars
    weights = {}
    for i, (name, image) in enumerate(zip(action.source.variables, action.images)):
        numerator, denominator = action.simplify(image)
        if len(numerator) != 1 or len(denominator) != 1:
            raise ShapeError(f"image of {name} is not diagonal: {action.describe(image)}")
        top, _ = numerator.leading_term()
        bottom, _ = denominator.leading_term()
        expected = tuple(1 if k == i else 0 for k in range(nsrc))
        if top[:nsrc] != expected or any(bottom[:nsrc]):
            raise ShapeError(f"image of {name} is not a multiple of {name}")
        weights[name] = tuple(a - b for a, b in zip(top[nsrc:], bottom[nsrc:]))
    return weights
