# gslice/services/invariants.py
"""Degree-by-degree invariant subspaces, saturation, relations and presentations."""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from gslice.core.errors import RingMismatchError
from gslice.ring.coeffs import CoeffKind, CoeffRing, Scalar
from gslice.ring.graded import monomial_exponents
from gslice.ring.poly import Exponent, MultiPoly, PolyRing
from gslice.services.action import ActionMap, ComponentAction
from gslice.services.linalg import (
    SparseVector,
    clear_denominators,
    hermite_normal_form,
    kernel_relations,
    lattice_contains,
    rref,
    saturate,
    sparse_contains,
    sparse_rank,
)

logger = logging.getLogger(__name__)


def working_field(coeff: CoeffRing) -> CoeffRing:
    """Integer computations run over Q and are saturated afterwards"""
    return CoeffRing.rationals() if coeff.kind == CoeffKind.integer else coeff


# -- spans ----------------------------------------------------------------------

def _rows(polys: Sequence[MultiPoly], monomials: Sequence[Exponent]) -> List[List[Scalar]]:
    return [[p.coefficient(m) for m in monomials] for p in polys]


def _support(polys: Sequence[MultiPoly]) -> List[Exponent]:
    keys = set()
    for p in polys:
        keys.update(p.term_map())
    if not polys:
        return []
    return sorted(keys, key=polys[0].ring.order_key, reverse=True)


def _check_rings(polys: Sequence[MultiPoly]) -> None:
    rings = {p.ring for p in polys}
    if len(rings) > 1:
        raise RingMismatchError(f"polynomials from different rings: {sorted(str(r) for r in rings)}")


def span_rank(polys: Sequence[MultiPoly]) -> int:
    if not polys:
        return 0
    return sparse_rank([p.term_map() for p in polys], working_field(polys[0].ring.coeff))


def span_contains(basis: Sequence[MultiPoly], f: MultiPoly) -> bool:
    """Membership in the span; over Z in the lattice the basis generates"""
    _check_rings(list(basis) + [f])
    if f.is_zero():
        return True
    if not basis:
        return False
    coeff = f.ring.coeff
    if coeff.kind == CoeffKind.integer:
        monomials = _support(list(basis) + [f])
        lattice = hermite_normal_form(_rows(basis, monomials))
        return lattice_contains(lattice, [f.coefficient(m) for m in monomials])
    return sparse_contains([p.term_map() for p in basis], f.term_map(), coeff)


def span_equals(first: Sequence[MultiPoly], second: Sequence[MultiPoly]) -> bool:
    """Equality of spans (of lattices over Z)"""
    _check_rings(list(first) + list(second))
    if not first or not second:
        return span_rank(first) == 0 and span_rank(second) == 0
    if first[0].ring.coeff.kind == CoeffKind.integer:
        monomials = _support(list(first) + list(second))
        return hermite_normal_form(_rows(first, monomials)) == hermite_normal_form(_rows(second, monomials))
    return all(span_contains(first, g) for g in second) and all(span_contains(second, g) for g in first)


# -- graded bases ---------------------------------------------------------------

@dataclass
class GradedBasis:
    """Basis of the degree-d invariants, as polynomials in ``ring``"""

    ring: PolyRing
    degree: int
    basis: List[MultiPoly] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def coeff(self) -> CoeffRing:
        return self.ring.coeff

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self) -> Iterator[MultiPoly]:
        return iter(self.basis)

    def contains(self, f: MultiPoly) -> bool:
        return span_contains(self.basis, f)

    def span_equals(self, polys: Sequence[MultiPoly]) -> bool:
        return span_equals(self.basis, list(polys))

    def names(self, catalog: Optional[Mapping[str, MultiPoly]] = None) -> List[str]:
        return [name_polynomial(f, catalog or {}) for f in self.basis]


def basis_from_rows(ring: PolyRing, degree: int, monomials: Sequence[Exponent],
                     rows: Sequence[Sequence[Scalar]]) -> GradedBasis:
    polys = [MultiPoly(ring, {m: v for m, v in zip(monomials, row) if v}) for row in rows]
    return GradedBasis(ring, degree, polys)


def _combine(vectors: Sequence[SparseVector], combo: Mapping[int, Scalar]) -> SparseVector:
    out: Dict = {}
    for index, c in combo.items():
        for key, value in vectors[index].items():
            out[key] = out.get(key, 0) + c * value
    return {k: v for k, v in out.items() if v}


def equalizer_rows(components: Sequence[ComponentAction], d: int) -> Tuple[List[Exponent], List[List[Scalar]]]:
    """Reduced echelon basis of the degree-d sections invariant on every component.

    The kernel on the first component is computed over all monomials; each
    further component only sees combinations that survived the earlier ones.
    """
    ring = components[0].source
    coeff = ring.coeff
    monomials = monomial_exponents(ring, d)
    current: Optional[List[SparseVector]] = None
    for component in components:
        if component.source != ring:
            raise RingMismatchError("components must share the slice ring")
        residuals = component.residuals(monomials, d)
        if residuals is None:
            return monomials, []
        vectors = [r.term_map() for r in residuals]
        if current is not None:
            vectors = [_combine(vectors, combo) for combo in current]
        logger.debug(f"degree {d}: {len(vectors)} candidate sections on {len(component.relations)}-relation component")
        kernel = kernel_relations(vectors, coeff)
        current = kernel if current is None else [_combine(current, combo) for combo in kernel]
        if not current:
            return monomials, []
    rows = [[combo.get(i, 0) for i in range(len(monomials))] for combo in current]
    return monomials, rref(rows, coeff).rows


def invariant_basis(action: ActionMap, d: int, field: Optional[CoeffRing] = None) -> GradedBasis:
    """Degree-d invariants of the (unsliced) action over the given field.

    Over Z the kernel is computed over Q and saturated.
    """
    field = field or action.source.coeff
    started = time.perf_counter()
    component = action.change_ring(working_field(field)).as_component()
    monomials, rows = equalizer_rows([component], d)
    basis = basis_from_rows(component.source, d, monomials, rows)
    if field.kind == CoeffKind.integer:
        basis = integer_saturate(basis)
    logger.info(f"{action.label or 'action'} over {field}: d={d} dim={basis.dim} ({time.perf_counter() - started:.2f}s)")
    return basis


def integer_saturate(basis: GradedBasis) -> GradedBasis:
    """Basis of (Q-span of basis) intersected with integer polynomials, in Hermite normal form"""
    ring = basis.ring.with_coeff(CoeffRing.integers())
    if not basis.basis:
        return GradedBasis(ring, basis.degree, [])
    if basis.coeff.kind == CoeffKind.prime:
        raise RingMismatchError("cannot saturate a basis over a prime field")
    monomials = monomial_exponents(basis.ring, basis.degree)
    rows = [clear_denominators(row)[0] for row in _rows(basis.basis, monomials)]
    return basis_from_rows(ring, basis.degree, monomials, saturate(rows))


def _invariant_dim(job: Tuple[ActionMap, int, CoeffRing]) -> int:
    action, d, field = job
    return invariant_basis(action, d, field).dim


def hilbert_function(action: ActionMap, d_max: int, field: Optional[CoeffRing] = None, workers: int = 1) -> List[int]:
    """[dim S_0, ..., dim S_{d_max}] of the unsliced action"""
    field = working_field(field or action.source.coeff)
    jobs = [(action, d, field) for d in range(d_max + 1)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_invariant_dim, jobs))
    return [_invariant_dim(job) for job in jobs]


# -- generators, relations, presentations -------------------------------------

@dataclass(frozen=True)
class Generator:
    name: str
    poly: MultiPoly
    degree: int


def generator_ring(generators: Sequence[Generator], coeff: CoeffRing) -> PolyRing:
    return PolyRing(coeff, tuple(g.name for g in generators), tuple(g.degree for g in generators))


def as_generators(gens: Mapping[str, MultiPoly]) -> List[Generator]:
    """Named polynomials as generators weighted by their own degree"""
    return [Generator(name, poly, max(poly.degree(), 1)) for name, poly in gens.items()]


def _evaluate_monomials(generators: Sequence[Generator], ring: PolyRing, d: int) -> Tuple[List[Exponent], List[MultiPoly]]:
    monomials = monomial_exponents(ring, d)
    target = generators[0].poly.ring
    images = [g.poly for g in generators]
    values = [ring.monomial(m).compose(images, target) for m in monomials]
    return monomials, values


def relation_search(gens: Mapping[str, MultiPoly], d: int) -> List[MultiPoly]:
    """Basis of the linear relations among generator monomials of weighted degree d"""
    generators = as_generators(gens)
    if not generators:
        return []
    coeff = generators[0].poly.ring.coeff
    ring = generator_ring(generators, coeff)
    monomials, values = _evaluate_monomials(generators, ring, d)
    kernel = kernel_relations([v.term_map() for v in values], working_field(coeff))
    rows = [[combo.get(i, 0) for i in range(len(monomials))] for combo in kernel]
    if not rows:
        return []
    if coeff.kind == CoeffKind.integer:
        rows = saturate([clear_denominators(r)[0] for r in rows])
    else:
        rows = rref(rows, coeff).rows
    relations = [MultiPoly(ring, {m: v for m, v in zip(monomials, row) if v}) for row in rows]
    logger.info(f"relation search at degree {d}: {len(relations)} relation(s)")
    return relations


@dataclass
class Presentation:
    """Generators (named polynomials with degrees) modulo homogeneous relations.

    ``constraints`` are inhomogeneous relations that hold on a chart; they
    are recorded and checked by substitution but play no part in the
    dimension count.
    """

    generators: List[Generator]
    relations: List[MultiPoly] = field(default_factory=list)
    constraints: List[MultiPoly] = field(default_factory=list)

    @property
    def ring(self) -> PolyRing:
        return generator_ring(self.generators, self.target.coeff)

    @property
    def target(self) -> PolyRing:
        return self.generators[0].poly.ring

    @classmethod
    def build(cls, generators: Sequence[Generator], relations: Sequence[str] = (),
              constraints: Sequence[str] = ()) -> "Presentation":
        gens = list(generators)
        ring = generator_ring(gens, gens[0].poly.ring.coeff)
        return cls(gens, [ring.parse(r) for r in relations], [ring.parse(c) for c in constraints])

    def expand(self, relation: MultiPoly) -> MultiPoly:
        """Substitute the generator polynomials"""
        return relation.compose([g.poly for g in self.generators], self.target)

    def failing_relations(self) -> List[MultiPoly]:
        return [r for r in self.relations if not self.expand(r).is_zero()]

    def quotient_dimension(self, d: int) -> int:
        """dim of the degree-d piece of k[generators]/(relations)"""
        ring = self.ring
        monomials = monomial_exponents(ring, d)
        multiples = []
        for relation in self.relations:
            e = relation.degree()
            if e > d:
                continue
            for shift in monomial_exponents(ring, d - e):
                multiples.append(relation.mul_monomial(shift).term_map())
        return len(monomials) - sparse_rank(multiples, working_field(ring.coeff))

    def monomial_images(self, d: int) -> List[MultiPoly]:
        """Degree-d generator monomials with the generator polynomials substituted"""
        _, values = _evaluate_monomials(self.generators, self.ring, d)
        return values

    def image_dimension(self, d: int) -> int:
        return span_rank(self.monomial_images(d))


# -- naming -----------------------------------------------------------------------

def _ratio(f: MultiPoly, g: MultiPoly) -> Optional[Scalar]:
    """lambda with f == lambda * g, if any"""
    if f.ring != g.ring or f.is_zero() or g.is_zero():
        return None
    ft, gt = f.term_map(), g.term_map()
    if set(ft) != set(gt):
        return None
    coeff = f.ring.coeff
    ratios = set()
    for key, value in ft.items():
        if coeff.kind == CoeffKind.prime:
            ratios.add(value * coeff.inverse(gt[key]) % coeff.modulus)
        else:
            ratios.add(Fraction(value) / Fraction(gt[key]))
        if len(ratios) > 1:
            return None
    return coeff.normalize(ratios.pop()) if coeff.kind != CoeffKind.integer else ratios.pop()


def name_polynomial(f: MultiPoly, catalog: Mapping[str, MultiPoly]) -> str:
    """Catalog name of f up to a scalar, else the printed polynomial"""
    for name, g in catalog.items():
        ratio = _ratio(f, g)
        if ratio is None:
            continue
        if ratio == 1:
            return name
        if ratio == -1 and f.ring.coeff.kind != CoeffKind.prime:
            return f"-{name}"
        return f"{ratio}*{name}"
    return str(f)
