# gslice/models/ordered_points.py
"""SL2 acting on n ordered points of the projective line, and two slices of it."""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple

from gslice.core.errors import ShapeError
from gslice.ring.coeffs import CoeffRing
from gslice.ring.poly import MultiPoly, PolyRing
from gslice.schemas.slice import GraphInvariantSpec, SliceSpec
from gslice.services.action import ActionMap, is_invariant, torus_action
from gslice.services.invariants import Generator, Presentation, invariant_basis
from gslice.services.slicing import SlicedGroupoid, build_slice, torus_weights

logger = logging.getLogger(__name__)

GROUP = ("a", "b", "c", "d")


def point_variables(n: int) -> Tuple[str, ...]:
    names = []
    for i in range(1, n + 1):
        names += [f"x{i}", f"y{i}"]
    return tuple(names)


def ordered_points_action(n: int, coeff: CoeffRing) -> ActionMap:
    """x_i -> a x_i + b y_i, y_i -> c x_i + d y_i; a degree-d invariant scales by det^(d/2)"""
    if n < 2:
        raise ShapeError("at least two points are required")
    images = {}
    for i in range(1, n + 1):
        images[f"x{i}"] = (f"a*x{i} + b*y{i}", 0)
        images[f"y{i}"] = (f"c*x{i} + d*y{i}", 0)
    source = PolyRing(coeff, point_variables(n))
    return ActionMap.build(source, PolyRing(coeff, GROUP), images, "a*d - b*c", character=Fraction(1, 2),
                           label=f"ordered-points:{n}")


def bracket(ring: PolyRing, i: int, j: int) -> MultiPoly:
    """x_i y_j - x_j y_i"""
    return ring.parse(f"x{i}*y{j} - x{j}*y{i}")


def graph_invariant(spec: GraphInvariantSpec, coeff: CoeffRing) -> MultiPoly:
    """Product of the brackets over the edges of the graph"""
    ring = PolyRing(coeff, point_variables(spec.n))
    result = ring.one()
    for i, j in spec.edges:
        result = result * bracket(ring, i, j)
    return result


def perfect_matchings(n: int) -> Iterator[List[Tuple[int, int]]]:
    """All perfect matchings of 1..n (n even)"""
    def match(rest):
        if not rest:
            yield []
            return
        first = rest[0]
        for k in range(1, len(rest)):
            pair = (first, rest[k])
            for tail in match(rest[1:k] + rest[k + 1:]):
                yield [pair] + tail
    if n % 2:
        return
    yield from match(list(range(1, n + 1)))


def matching_invariants_hold(n: int, coeff: CoeffRing) -> bool:
    """Every perfect-matching graph invariant of multidegree (1,...,1) is invariant"""
    action = ordered_points_action(n, coeff)
    for edges in perfect_matchings(n):
        if not is_invariant(action, graph_invariant(GraphInvariantSpec(n=n, edges=edges), coeff)):
            logger.error(f"matching {edges} is not invariant over {coeff}")
            return False
    return True


# -- slice descriptions -------------------------------------------------------------

@dataclass
class HmsvDescription:
    """A slice of the ordered-points groupoid with a torus chart and its presentation.

    ``chart_map`` writes every chart variable as a monomial of the slice ring;
    ``degree_scale`` converts presentation degree to chart degree.
    """

    label: str
    n: int
    groupoid: SlicedGroupoid
    weights: Dict[str, int]
    chart: PolyRing
    chart_map: Dict[str, MultiPoly]
    presentation: Presentation
    degree_scale: int = 1
    notes: List[str] = field(default_factory=list)

    @property
    def chart_weights(self) -> Dict[str, int]:
        out = {}
        for name, poly in self.chart_map.items():
            exps, _ = poly.leading_term()
            out[name] = sum(k * self.weights[v] for v, k in zip(self.groupoid.ring.variables, exps))
        return out

    def chart_action(self) -> ActionMap:
        return torus_action(self.chart.coeff, self.chart_weights)

    def invariant_dimension(self, d: int) -> int:
        return invariant_basis(self.chart_action(), self.degree_scale * d).dim

    def table(self, d_max: int) -> List[Tuple[int, int, int, int]]:
        """(d, chart invariants, presentation quotient, generator image) per degree"""
        rows = []
        for d in range(d_max + 1):
            rows.append((d, self.invariant_dimension(d), self.presentation.quotient_dimension(d),
                         self.presentation.image_dimension(d)))
        return rows

    def verify(self, d_max: int) -> bool:
        if self.presentation.failing_relations():
            return False
        return all(a == b == c for _, a, b, c in self.table(d_max))

    def to_slice(self, poly: MultiPoly) -> MultiPoly:
        """Chart polynomial written in the slice ring"""
        return poly.compose([self.chart_map[v] for v in self.chart.variables], self.groupoid.ring)


def _check_even(n: int) -> int:
    if n % 2 or n < 4:
        raise ShapeError(f"n must be even and at least 4, got {n}")
    return n // 2


def _slice_weights(groupoid: SlicedGroupoid) -> Dict[str, int]:
    """Weights of the diagonal torus t -> diag(t, 1/t) on the slice ring"""
    raw = torus_weights(groupoid.components[0])
    ia, id_ = GROUP.index("a"), GROUP.index("d")
    return {name: w[ia] - w[id_] for name, w in raw.items()}


def first_slice_spec(n: int) -> SliceSpec:
    """P1 = 0 and Pn = infinity; only the diagonal torus preserves it"""
    return SliceSpec(vanish=["x1", f"y{n}"], components=[["b", "c"]], labels=["R1"])


def second_slice_spec() -> SliceSpec:
    """P1 = 0 and P2 = infinity"""
    return SliceSpec(vanish=["x1", "y2"], components=[["b", "c"]], labels=["R1"])


def hmsv_first_slice(n: int, coeff: Optional[CoeffRing] = None) -> HmsvDescription:
    """P1 = 0 and Pn = infinity: the invariants are the rank-one matrices W_ij = x_i y_j"""
    m = _check_even(n)
    coeff = coeff or CoeffRing.rationals()
    spec = first_slice_spec(n)
    groupoid = build_slice(ordered_points_action(n, coeff), spec)
    ring = groupoid.ring
    left = [f"x{i}" for i in range(2, m + 1)]
    right = [f"y{j}" for j in range(m + 1, n)]
    chart = PolyRing(coeff, tuple(left + right))
    chart_map = {name: ring.gen(name) for name in chart.variables}
    generators = [Generator(f"W{i}{j}", chart.parse(f"x{i}*y{j}"), 1)
                  for i in range(2, m + 1) for j in range(m + 1, n)]
    relations = []
    for i in range(2, m + 1):
        for k in range(i + 1, m + 1):
            for j in range(m + 1, n):
                for l in range(j + 1, n):
                    relations.append(f"W{i}{j}*W{k}{l} - W{i}{l}*W{k}{j}")
    presentation = Presentation.build(generators, relations)
    notes = [f"open conditions on the chart: y1, x{n} and the remaining coordinates are set to 1"]
    return HmsvDescription("first", n, groupoid, _slice_weights(groupoid), chart, chart_map,
                           presentation, degree_scale=2, notes=notes)


def hmsv_second_slice(n: int, coeff: Optional[CoeffRing] = None) -> HmsvDescription:
    """P1 = 0 and P2 = infinity: pairs (P_i, P_i+1) give coordinates A_i, B_i, C_i, D_i"""
    _check_even(n)
    coeff = coeff or CoeffRing.rationals()
    spec = second_slice_spec()
    groupoid = build_slice(ordered_points_action(n, coeff), spec)
    ring = groupoid.ring
    indices = list(range(3, n, 2))
    names = []
    chart_texts = {}
    for i in indices:
        j = i + 1
        chart_texts.update({
            f"A{i}": f"x{i}*x{j}",
            f"B{i}": f"x{i}*y{j}",
            f"C{i}": f"y{i}*x{j}",
            f"D{i}": f"y{i}*y{j}",
        })
        names += [f"A{i}", f"B{i}", f"C{i}", f"D{i}"]
    chart = PolyRing(coeff, tuple(names))
    chart_map = {name: ring.parse(text) for name, text in chart_texts.items()}
    generators = []
    for i in indices:
        generators += [Generator(f"B{i}", chart.gen(f"B{i}"), 1), Generator(f"C{i}", chart.gen(f"C{i}"), 1)]
    for i in indices:
        for j in indices:
            generators.append(Generator(f"F{i}{j}", chart.parse(f"A{i}*D{j}"), 2))
    relations = []
    for i in indices:
        for k in indices:
            if k <= i:
                continue
            for j in indices:
                for l in indices:
                    if l <= j:
                        continue
                    relations.append(f"F{i}{j}*F{k}{l} - F{i}{l}*F{k}{j}")
    constraints = []
    for i in indices:
        constraints += [f"F{i}{i} - B{i}*C{i}", f"B{i} - C{i} - 1"]
    presentation = Presentation.build(generators, relations, constraints)
    notes = [f"B{i} - C{i} is the bracket of points {i} and {i + 1}, normalised to 1 on the chart" for i in indices]
    return HmsvDescription("second", n, groupoid, _slice_weights(groupoid), chart, chart_map,
                           presentation, degree_scale=1, notes=notes)


def constraint_report(description: HmsvDescription) -> List[Tuple[str, bool]]:
    """Check the recorded inhomogeneous relations on the slice.

    F_ii - B_i C_i must vanish identically; B_i - C_i must be the bracket of
    the paired points, an SL2 invariant that the chart normalises to 1.
    """
    presentation = description.presentation
    action = ordered_points_action(description.n, description.chart.coeff)
    results = []
    for constraint in presentation.constraints:
        constant = constraint.constant_value()
        homogeneous_part = constraint - constant
        on_slice = description.to_slice(presentation.expand(homogeneous_part))
        if constant == 0:
            results.append((str(constraint), on_slice.is_zero()))
            continue
        name = next(v for v in constraint.variables_used() if v.startswith("B"))
        i = int(name[1:])
        full = bracket(action.source, i, i + 1)
        ok = on_slice == description.groupoid.restrict(full) and is_invariant(action, full)
        results.append((str(constraint), ok))
    return results
