import pytest

from gslice.core.errors import NotHomogeneousError, RingMismatchError
from gslice.models.kontsevich import (
    LAMBDA_CHAR2,
    SLICE_RESTRICTIONS,
    SectionPair,
    StabilityClass,
    act_on_pair,
    char2_representatives,
    classical_invariants,
    classify_point,
    evaluate_invariants,
    kontsevich_action,
    slice_restrictions,
    slice_ring,
    stabilizer_equations,
    veronese_generators,
)
from gslice.ring.coeffs import CoeffRing
from gslice.services.invariants import as_generators, generator_ring, relation_search, span_equals


# Test the linear and quadratic relations among the classical invariants
def test_invariant_relations(zz):
    inv = classical_invariants(zz)
    assert inv["Delta12"] == inv["Delta1"] + inv["Delta2"] + inv["Gamma"].scale(2)
    assert inv["Lambda"].scale(4) == inv["Gamma"] ** 2 - inv["Delta1"] * inv["Delta2"]


# Test restrictions to the slice A1 = C2 = 0
def test_slice_restrictions(zz):
    restricted = slice_restrictions(zz)
    ring = slice_ring(zz)
    for name, text in SLICE_RESTRICTIONS.items():
        assert restricted[name] == ring.parse(text), name


# Test Lambda modulo 2
def test_lambda_char2(f2):
    lam = classical_invariants(f2)["Lambda"]
    assert lam == lam.ring.parse(LAMBDA_CHAR2)
    assert kontsevich_action(f2).source == lam.ring


# Test the three stability classes in characteristic 0 and 2
@pytest.mark.parametrize("characteristic", [0, 2])
@pytest.mark.parametrize("s1,s2,expected", [
    ("x^2", "x^2", StabilityClass.unstable),
    ("x*y", "x*y", StabilityClass.strictly_semistable),
    ("x^2", "y^2", StabilityClass.properly_stable),
])
def test_classify(characteristic, s1, s2, expected):
    result = classify_point(SectionPair.parse(s1, s2, characteristic))
    assert result.label == expected
    assert result.characteristic == characteristic
    assert not result.zero_pair


# Test the characteristic-2 representatives
def test_char2_representatives():
    reps = char2_representatives()
    s1, s2 = reps["strictly-semistable"]
    assert classify_point(SectionPair.parse(s1, s2, 2)).label == StabilityClass.strictly_semistable
    s1, s2 = reps["totally-ramified"]
    result = classify_point(SectionPair.parse(s1, s2, 2))
    assert result.label == StabilityClass.properly_stable
    assert set(result.values) == {"B1", "B2", "Lambda"}


# Test Lambda(x^2, y^2) = 1
@pytest.mark.parametrize("characteristic", [0, 2])
def test_lambda_value(characteristic):
    values = evaluate_invariants(SectionPair.parse("x^2", "y^2", characteristic))
    assert values["Lambda"] == 1


# Test the zero pair and malformed forms
def test_classify_edge_cases():
    zero = classify_point(SectionPair.parse("0", "0"))
    assert zero.label == StabilityClass.unstable
    assert zero.zero_pair

    with pytest.raises(NotHomogeneousError):
        SectionPair.parse("x", "y^2")
    with pytest.raises(NotHomogeneousError):
        SectionPair.parse("x^2 + y", "y^2")
    with pytest.raises(RingMismatchError):
        classify_point(SectionPair.parse("x^2", "y^2", 3))


# Test moving a pair by a group element
def test_act_on_pair():
    pair = SectionPair.parse("x^2", "y^2")
    moved = act_on_pair(pair, {"a": 0, "b": 1, "c": 1, "d": 0})
    assert moved.proportional_to(SectionPair.parse("y^2", "x^2"))
    assert not moved.proportional_to(pair)
    assert classify_point(moved).label == classify_point(pair).label

    scaled = act_on_pair(pair, {"a": 2, "b": 0, "c": 0, "d": 1})
    assert scaled.proportional_to(SectionPair.parse("2*x^2", "1/2*y^2"))


# Test the stabilizer of (x^2, y^2) in characteristic 2
def test_stabilizer_char2(f2):
    equations = stabilizer_equations(SectionPair.parse("x^2", "y^2", 2))
    group = kontsevich_action(f2).group
    assert set(equations) == {group.parse("b^2"), group.parse("c^2"), group.parse("a^2 + d^2")}


# Test the six relations among the fourth powers B1^4, ..., B2^4
@pytest.mark.parametrize("tag", ["Q", "F2"])
def test_veronese(tag):
    coeff = CoeffRing.from_tag(tag)
    gens = veronese_generators(coeff)
    ring = generator_ring(as_generators(gens), coeff)
    found = relation_search(gens, 8)
    assert len(found) == 6
    minors = [ring.parse(f"V{i}*V{j + 1} - V{j}*V{i + 1}") for i in range(4) for j in range(i + 1, 4)]
    assert span_equals(found, minors)
    assert relation_search(gens, 4) == []
