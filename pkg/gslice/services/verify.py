# gslice/services/verify.py
"""Named verification checks; each returns a list of CheckResult."""
import logging
import random
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Sequence

from gslice.core.config import get_settings
from gslice.core.errors import UnknownCheckError
from gslice.models import grassmann, kontsevich, ordered_points
from gslice.ring.coeffs import CoeffRing
from gslice.schemas.report import CheckResult
from gslice.services.action import gl2_multiply, is_invariant, spot_check_action_law
from gslice.services.invariants import (
    Presentation,
    as_generators,
    generator_ring,
    hilbert_function,
    relation_search,
    span_equals,
)
from gslice.services.slicing import (
    SlicedGroupoid,
    flatness_check,
    intersect_equalizers,
    sliced_hilbert_function,
)

logger = logging.getLogger(__name__)

ZZ = CoeffRing.integers()
QQ = CoeffRing.rationals()
F2 = CoeffRing.prime_field(2)

# lattice comparisons over Z stop here; dimension checks use the full degree
LATTICE_DEGREE = 4
HMSV_DEGREE = 4


def _result(check: str, name: str, passed: bool, witness: str = None) -> CheckResult:
    if not passed:
        logger.error(f"[{check}] {name} failed: {witness}")
    return CheckResult(check=check, name=name, passed=passed, witness=None if passed else witness)


def _matches(groupoid: SlicedGroupoid, presentation: Presentation, field: CoeffRing, d_max: int,
             labels: Sequence[str] = None) -> List[int]:
    """Degrees where the sliced invariants differ from the span of the generator monomials"""
    bad = []
    for d in range(d_max + 1):
        basis = intersect_equalizers(groupoid, d, field, labels)
        if not span_equals(basis.basis, presentation.monomial_images(d)):
            bad.append(d)
    return bad


def _dimensions(groupoid: SlicedGroupoid, presentation: Presentation, field: CoeffRing,
                d_max: int) -> List[str]:
    bad = []
    for d in range(d_max + 1):
        got = intersect_equalizers(groupoid, d, field).dim
        expected = presentation.quotient_dimension(d)
        if got != expected:
            bad.append(f"d={d}: {got} != {expected}")
    return bad


def check_relations(d_max: int) -> List[CheckResult]:
    inv = kontsevich.classical_invariants(ZZ)
    results = []
    first = inv["Delta12"] - inv["Delta1"] - inv["Delta2"] - inv["Gamma"].scale(2)
    results.append(_result("relations", "Delta12 = Delta1 + Delta2 + 2*Gamma", first.is_zero(), str(first)))
    second = inv["Lambda"].scale(4) - inv["Gamma"] ** 2 + inv["Delta1"] * inv["Delta2"]
    results.append(_result("relations", "4*Lambda = Gamma^2 - Delta1*Delta2", second.is_zero(), str(second)))

    action = kontsevich.kontsevich_action(ZZ)
    failing = [name for name, f in inv.items() if not is_invariant(action, f)]
    results.append(_result("relations", "Delta1, Delta2, Delta12, Gamma, Lambda are invariant over Z",
                           not failing, ", ".join(failing)))

    gens = kontsevich.generator_invariants(QQ)
    found = relation_search(gens, 4)
    ring = generator_ring(as_generators(gens), QQ)
    expected = ring.parse("Delta1*Delta2 - Gamma^2 + 4*Lambda")
    ok = len(found) == 1 and span_equals(found, [expected])
    results.append(_result("relations", "the only degree-4 relation is 4*Lambda - Gamma^2 + Delta1*Delta2",
                           ok, "; ".join(str(r) for r in found) or "none"))
    return results


def check_restrictions(d_max: int) -> List[CheckResult]:
    restricted = kontsevich.slice_restrictions(ZZ)
    ring = kontsevich.slice_ring(ZZ)
    results = []
    for name, text in kontsevich.SLICE_RESTRICTIONS.items():
        expected = ring.parse(text)
        results.append(_result("restrictions", f"{name}|W = {text}", restricted[name] == expected,
                               str(restricted[name])))
    return results


def check_restriction_dims(d_max: int) -> List[CheckResult]:
    """Restriction to the slice is an isomorphism, so Q-dimensions agree degree by degree"""
    top = min(d_max, get_settings().unsliced_cap)
    unsliced = hilbert_function(kontsevich.kontsevich_action(QQ), top, QQ)
    sliced = sliced_hilbert_function(kontsevich.kontsevich_slice(QQ), top, QQ)
    return [_result("restriction-dims", f"unsliced and sliced Q dims agree for d <= {top}", unsliced == sliced,
                    f"unsliced {unsliced}, sliced {sliced}")]


def check_theorem_i(d_max: int) -> List[CheckResult]:
    groupoid = kontsevich.kontsevich_slice(QQ)
    top = min(d_max, LATTICE_DEGREE)
    presentation = kontsevich.slice_presentation(ZZ, kontsevich.S124_GENERATORS)
    bad = _matches(groupoid, presentation, ZZ, top)
    results = [_result("theorem-i", f"Z-invariants = Z<Delta1, Delta2, Gamma, Lambda> restricted, d <= {top}",
                       not bad, f"degrees {bad}")]
    if top >= 4:
        lam = kontsevich.slice_ring(ZZ).parse(kontsevich.SLICE_RESTRICTIONS["Lambda"])
        basis = intersect_equalizers(groupoid, 4, ZZ)
        results.append(_result("theorem-i", "Lambda|W lies in the saturated degree-4 invariants",
                               basis.contains(lam), str(lam)))
    return results


def check_theorem_ii(d_max: int) -> List[CheckResult]:
    groupoid = kontsevich.kontsevich_slice(QQ)
    texts = [kontsevich.SLICE_RESTRICTIONS[name] for name in ("Delta1", "Delta2", "Gamma")]
    presentation = kontsevich.slice_presentation(QQ, texts)
    bad = _dimensions(groupoid, presentation, QQ, d_max)
    results = [_result("theorem-ii", f"Q dims match Q[Delta1, Delta2, Gamma] for d <= {d_max}", not bad, "; ".join(bad))]
    top = min(d_max, LATTICE_DEGREE)
    bad_span = _matches(groupoid, presentation, QQ, top)
    results.append(_result("theorem-ii", f"Q-invariants spanned by Delta1, Delta2, Gamma for d <= {top}",
                           not bad_span, f"degrees {bad_span}"))
    return results


def check_theorem_iii(d_max: int) -> List[CheckResult]:
    groupoid = kontsevich.kontsevich_slice(F2)
    texts = ["B1", "B2", kontsevich.SLICE_RESTRICTIONS["Lambda"]]
    presentation = kontsevich.slice_presentation(F2, texts)
    bad = _dimensions(groupoid, presentation, F2, d_max)
    results = [_result("theorem-iii", f"F2 dims match F2[B1, B2, Lambda] for d <= {d_max}", not bad, "; ".join(bad))]
    top = min(d_max, LATTICE_DEGREE)
    bad_span = _matches(groupoid, presentation, F2, top)
    results.append(_result("theorem-iii", f"F2-invariants spanned by B1, B2, Lambda for d <= {top}",
                           not bad_span, f"degrees {bad_span}"))
    return results


def check_flatness(d_max: int) -> List[CheckResult]:
    action = kontsevich.kontsevich_action(ZZ)
    ring = action.source
    factors = kontsevich.FIBER_FACTORS
    report = flatness_check(action, ["A1"], factors, ring.gen("C2"))
    witness = ", ".join(f"{k}: {v}" for k, v in report.remainders.items())
    results = [_result("flatness", "sigma^*C2 on A1 = 0 is divisible by neither c nor B1*a + C1*c",
                       bool(report), witness or "degenerate")]
    own = flatness_check(action, ["A1"], factors, ring.gen("A1"))
    divisible = not own.degenerate and all(r.is_zero() for r in own.remainders.values())
    results.append(_result("flatness", "sigma^*A1 on A1 = 0 is divisible by both factors", divisible,
                           ", ".join(f"{k}: {v}" for k, v in own.remainders.items())))
    return results


def check_components(d_max: int) -> List[CheckResult]:
    top = min(d_max, LATTICE_DEGREE)
    groupoid = kontsevich.kontsevich_slice(QQ)
    cases = [
        ("S1 = Z[B1, B2, C1*A2]", ["R1"], kontsevich.S1_GENERATORS, ZZ, groupoid),
        ("S1 and S4 = Z[B1^2, B2^2, B1*B2, C1*A2]", ["R1", "R4"], ("B1^2", "B2^2", "B1*B2", "C1*A2"), ZZ, groupoid),
        ("S1, S2 and S4 = Z<B1^2, B2^2, 2*C1*A2 - B1*B2, C1*A2*(C1*A2 - B1*B2)>", ["R1", "R2", "R4"],
         kontsevich.S124_GENERATORS, ZZ, groupoid),
        ("F2: S1 and S4 = F2[B1, B2, C1*A2]", ["R1", "R4"], kontsevich.S1_GENERATORS, F2,
         kontsevich.kontsevich_slice(F2)),
    ]
    results = []
    for name, labels, texts, field, sliced in cases:
        presentation = kontsevich.slice_presentation(field, texts)
        bad = _matches(sliced, presentation, field, top, labels)
        results.append(_result("components", f"{name}, d <= {top}", not bad, f"degrees {bad}"))
    return results


def _gl2_f2() -> List[Dict[str, int]]:
    return [dict(zip("abcd", v)) for v in product((0, 1), repeat=4) if (v[0] * v[3] - v[1] * v[2]) % 2]


def check_classification(d_max: int) -> List[CheckResult]:
    expected = [
        (("x^2", "x^2"), kontsevich.StabilityClass.unstable),
        (("x*y", "x*y"), kontsevich.StabilityClass.strictly_semistable),
        (("x^2", "y^2"), kontsevich.StabilityClass.properly_stable),
    ]
    results = []
    for characteristic in (0, 2):
        for (s1, s2), label in expected:
            got = kontsevich.classify_point(kontsevich.SectionPair.parse(s1, s2, characteristic))
            results.append(_result("classification", f"char {characteristic}: ({s1}, {s2}) is {label.value}",
                                   got.label == label, got.label.value))
        lam = kontsevich.evaluate_invariants(kontsevich.SectionPair.parse("x^2", "y^2", characteristic))["Lambda"]
        results.append(_result("classification", f"char {characteristic}: Lambda(x^2, y^2) = 1", lam == 1, str(lam)))

    rng = random.Random(20)
    moved = []
    for _ in range(20):
        pair = kontsevich.SectionPair.from_coefficients(
            {v: rng.randint(-2, 2) for v in kontsevich.SOURCE}, QQ)
        g = {v: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for v in "abcd"}
        if g["a"] * g["d"] == g["b"] * g["c"]:
            g["a"] += 1
        if g["a"] * g["d"] == g["b"] * g["c"]:
            continue
        if kontsevich.classify_point(pair).label != kontsevich.classify_point(kontsevich.act_on_pair(pair, g)).label:
            moved.append(str(pair.coefficients()))
    results.append(_result("classification", "char 0: class is constant on random orbits", not moved, "; ".join(moved)))

    moved = []
    for _ in range(20):
        pair = kontsevich.SectionPair.from_coefficients({v: rng.randint(0, 1) for v in kontsevich.SOURCE}, F2)
        for g in _gl2_f2():
            if kontsevich.classify_point(pair).label != kontsevich.classify_point(kontsevich.act_on_pair(pair, g)).label:
                moved.append(str(pair.coefficients()))
                break
    results.append(_result("classification", "char 2: class is constant on GL2(F2) orbits", not moved, "; ".join(moved)))
    return results


def check_char2(d_max: int) -> List[CheckResult]:
    action = kontsevich.kontsevich_action(F2)
    ring = action.source
    results = []
    failing = [name for name in ("B1", "B2") if not is_invariant(action, ring.gen(name))]
    results.append(_result("char2", "B1 and B2 are invariant over F2", not failing, ", ".join(failing)))
    lam = kontsevich.classical_invariants(F2)["Lambda"]
    expected = ring.parse(kontsevich.LAMBDA_CHAR2)
    results.append(_result("char2", "Lambda mod 2 has the reduced form", lam == expected, str(lam)))
    results.append(_result("char2", "the action law holds numerically over F2",
                           spot_check_action_law(action, gl2_multiply, random.Random(2)), "mismatch"))

    # reductions of the integral invariants, and their squares, lie in F2[B1, B2, Lambda]
    groupoid = kontsevich.kontsevich_slice(QQ)
    presentation = kontsevich.slice_presentation(F2, ["B1", "B2", kontsevich.SLICE_RESTRICTIONS["Lambda"]])
    top = min(d_max, LATTICE_DEGREE)
    outside = []
    for d in range(top + 1):
        images = presentation.monomial_images(d)
        squares = presentation.monomial_images(2 * d)
        for f in intersect_equalizers(groupoid, d, ZZ):
            reduced = f.change_ring(F2)
            if not span_equals(images + [reduced], images) or not span_equals(squares + [reduced ** 2], squares):
                outside.append(str(f))
    results.append(_result("char2", f"reductions of Z-invariants and their squares lie in F2[B1, B2, Lambda], d <= {top}",
                           not outside, "; ".join(outside)))

    for label, (s1, s2) in kontsevich.char2_representatives().items():
        got = kontsevich.classify_point(kontsevich.SectionPair.parse(s1, s2, 2)).label
        want = (kontsevich.StabilityClass.strictly_semistable if label == "strictly-semistable"
                else kontsevich.StabilityClass.properly_stable)
        results.append(_result("char2", f"({s1}, {s2}) is {want.value}", got == want, got.value))

    equations = kontsevich.stabilizer_equations(kontsevich.SectionPair.parse("x^2", "y^2", 2))
    group = action.group
    expected_eqs = {group.parse(t) for t in ("b^2", "c^2", "a^2 + d^2")}
    results.append(_result("char2", "stabilizer of (x^2, y^2) is cut out by b^2, c^2, a^2 + d^2",
                           set(equations) == expected_eqs, ", ".join(str(e) for e in equations)))
    return results


def check_veronese(d_max: int) -> List[CheckResult]:
    gens = kontsevich.veronese_generators(F2)
    found = relation_search(gens, 8)
    ring = generator_ring(as_generators(gens), F2)
    minors = []
    for i in range(4):
        for j in range(i + 1, 4):
            minors.append(ring.parse(f"V{i}*V{j + 1} - V{j}*V{i + 1}"))
    results = [
        _result("veronese", "six quadratic relations among B1^4, ..., B2^4", len(found) == 6, f"{len(found)} found"),
        _result("veronese", "they are the 2x2 minors of the catalecticant", span_equals(found, minors),
                "; ".join(str(r) for r in found)),
    ]
    return results


def check_hmsv(d_max: int) -> List[CheckResult]:
    top = min(d_max, HMSV_DEGREE)
    results = []
    for n in (4, 6):
        for build in (ordered_points.hmsv_first_slice, ordered_points.hmsv_second_slice):
            description = build(n)
            rows = description.table(top)
            bad = [f"d={d}: {a}/{b}/{c}" for d, a, b, c in rows if not a == b == c]
            failing = [str(r) for r in description.presentation.failing_relations()]
            results.append(_result("hmsv", f"{description.label} description, n={n}: dimensions agree for d <= {top}",
                                   not bad and not failing, "; ".join(bad + failing)))
            for constraint, ok in ordered_points.constraint_report(description):
                results.append(_result("hmsv", f"{description.label} description, n={n}: {constraint}", ok, constraint))
    for n, field in ((4, ZZ), (6, F2)):
        results.append(_result("hmsv", f"perfect matching invariants, n={n} over {field}",
                               ordered_points.matching_invariants_hold(n, field), "see log"))
    return results


def check_gale(d_max: int) -> List[CheckResult]:
    results = []
    example = grassmann.ConfigMatrix.of([[1, 0, 1, 1], [0, 1, 1, 2]])
    p = grassmann.pluecker(example)
    results.append(_result("gale", "pluecker of the 2x4 example is (1, 1, 2, -1, -1, 1)", p == [1, 1, 2, -1, -1, 1], str(p)))
    check = grassmann.complementarity(example)
    results.append(_result("gale", "complementarity on the 2x4 example with scale -1",
                           check.holds and check.scale == -1, f"scale {check.scale}, mismatches {check.mismatches}"))

    rng = random.Random(11)
    failures = []
    for n, m in ((2, 5), (3, 6)):
        for _ in range(20):
            matrix = grassmann.random_config(n, m, rng)
            dual = grassmann.gale_transform(matrix)
            if not grassmann.complementarity(matrix, dual).holds:
                failures.append(matrix.to_text().replace("\n", " | "))
            elif not grassmann.gale_transform(dual).row_space_equals(matrix):
                failures.append("double dual: " + matrix.to_text().replace("\n", " | "))
    results.append(_result("gale", "complementarity on 20 random 2x5 and 3x6 matrices", not failures, "; ".join(failures)))

    relations = grassmann.three_term_relations(5)
    nonzero = [k for k, v in relations.items() if not v.is_zero()]
    results.append(_result("gale", "three-term Pluecker relations vanish on a generic 2x5 matrix", not nonzero,
                           ", ".join(nonzero)))
    return results


CHECKS: Dict[str, Callable[[int], List[CheckResult]]] = {
    "relations": check_relations,
    "restrictions": check_restrictions,
    "restriction-dims": check_restriction_dims,
    "theorem-i": check_theorem_i,
    "theorem-ii": check_theorem_ii,
    "theorem-iii": check_theorem_iii,
    "flatness": check_flatness,
    "components": check_components,
    "classification": check_classification,
    "char2": check_char2,
    "veronese": check_veronese,
    "hmsv": check_hmsv,
    "gale": check_gale,
}


def resolve_checks(names: Sequence[str]) -> List[str]:
    out = []
    for name in names:
        if name == "all":
            out += [c for c in CHECKS if c not in out]
            continue
        if name not in CHECKS:
            raise UnknownCheckError(f"unknown check {name!r}; choose from {', '.join(list(CHECKS) + ['all'])}")
        if name not in out:
            out.append(name)
    return out


def run_checks(names: Sequence[str], d_max: int) -> List[CheckResult]:
    results = []
    for name in resolve_checks(names):
        logger.info(f"running check {name} up to degree {d_max}")
        results += CHECKS[name](d_max)
    return results
