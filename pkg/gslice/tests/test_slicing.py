import pytest

from gslice.core.errors import (
    DivisionError,
    DuplicateComponentError,
    InconsistentComponentError,
    ShapeError,
    SpecFileError,
)
from gslice.models.kontsevich import (
    FIBER_FACTORS,
    S124_GENERATORS,
    SLICE,
    classical_invariants,
    kontsevich_action,
    slice_polys,
)
from gslice.models.ordered_points import first_slice_spec, ordered_points_action
from gslice.ring.graded import graded_basis
from gslice.schemas.slice import SliceSpec
from gslice.services.slicing import (
    build_slice,
    canonical_relation,
    flatness_check,
    intersect_equalizers,
    parse_relation,
    sliced_hilbert_function,
    torus_weights,
)


# Test the slice ring and its components
def test_kontsevich_components(kontsevich_q):
    assert kontsevich_q.ring.variables == ("B1", "C1", "A2", "B2")
    assert [c.label for c in kontsevich_q.components] == ["R1", "R2", "R3", "R4"]
    assert kontsevich_q.select(["R4", "R1"])[0].label == "R4"
    with pytest.raises(SpecFileError):
        kontsevich_q.component("R9")


# Test the restricted action on the diagonal component
def test_diagonal_component(kontsevich_q):
    table = dict(kontsevich_q.component("R1").image_table())
    assert table == {"B1": "B1", "C1": "C1*d/a", "A2": "A2*a/d", "B2": "B2"}
    weights = torus_weights(kontsevich_q.component("R1"))
    assert weights["B1"] == (0, 0, 0, 0)
    assert weights["C1"] == (-1, 0, 0, 1)
    assert weights["A2"] == (1, 0, 0, -1)


# Test the component where the second form is fixed up to sign
def test_second_component(kontsevich_q, kontsevich_f2):
    component = kontsevich_q.component("R2")
    ring = kontsevich_q.ring
    assert dict(component.image_table())["B2"] == "-B2"
    assert component.is_invariant(ring.parse("2*C1*A2 - B1*B2"))
    assert component.is_invariant(ring.parse("B1^2"))
    assert not component.is_invariant(ring.parse("C1*A2"))
    assert not component.is_invariant(ring.parse("B1*B2"))
    with pytest.raises(ShapeError):
        torus_weights(component)

    reduced = kontsevich_f2.component("R2")
    assert reduced.is_invariant(kontsevich_f2.ring.parse("B1*B2"))
    assert not reduced.is_invariant(kontsevich_f2.ring.parse("C1*A2"))


# Test images on the second component over F2
def test_second_component_image_f2(kontsevich_f2):
    component = kontsevich_f2.component("R2")
    ring = kontsevich_f2.ring
    assert component.maps_to(ring.parse("C1*A2"), ring.parse("C1*A2 + B1*B2"))
    assert component.maps_to(ring.parse("C1*A2 + B1*B2"), ring.parse("C1*A2"))
    assert not component.maps_to(ring.parse("C1*A2"), ring.parse("C1*A2"))
    assert component.maps_to(ring.parse("B1*B2"), ring.parse("B1*B2"))
    assert not component.maps_to(ring.parse("B1*B2"), ring.parse("B1"))
    assert component.maps_to(ring.zero(), ring.zero())


# Test global invariants restrict to invariants of every component
def test_restrictions_are_invariant(kontsevich_q):
    for name, f in classical_invariants(kontsevich_q.ring.coeff).items():
        restricted = kontsevich_q.restrict(f)
        assert restricted.ring == kontsevich_q.ring
        for component in kontsevich_q.components:
            assert component.is_invariant(restricted), (name, component.label)


# Test S1 = Q[B1, B2, C1*A2]
def test_diagonal_equalizer(kontsevich_q):
    dims = [intersect_equalizers(kontsevich_q, d, labels=["R1"]).dim for d in range(1, 5)]
    assert dims == [2, 4, 6, 9]


# Test S1 and S4 over Q and F2
def test_two_component_equalizer(kontsevich_q, kontsevich_f2):
    rational = [intersect_equalizers(kontsevich_q, d, labels=["R1", "R4"]).dim for d in range(1, 5)]
    assert rational == [0, 4, 0, 9]
    binary = [intersect_equalizers(kontsevich_f2, d, labels=["R1", "R4"]).dim for d in range(1, 5)]
    assert binary == [2, 4, 6, 9]


# Test the full sliced Hilbert function in low degree
def test_sliced_hilbert_function(kontsevich_q, kontsevich_f2, zz):
    assert sliced_hilbert_function(kontsevich_q, 4) == [1, 0, 3, 0, 6]
    assert sliced_hilbert_function(kontsevich_f2, 4) == [1, 2, 3, 4, 6]
    assert sliced_hilbert_function(kontsevich_q, 4, zz) == [1, 0, 3, 0, 6]


# Test the integral degree-2 invariants and Lambda in degree 4
def test_integral_sliced_invariants(kontsevich_q, zz):
    degree2 = intersect_equalizers(kontsevich_q, 2, zz)
    assert degree2.coeff == zz
    assert degree2.span_equals(slice_polys(zz, S124_GENERATORS[:3]))
    assert not degree2.contains(slice_polys(zz, ["C1*A2"])[0])

    degree4 = intersect_equalizers(kontsevich_q, 4, zz)
    assert degree4.contains(slice_polys(zz, ["C1*A2*(C1*A2 - B1*B2)"])[0])


# Test malformed component lists
def test_component_errors(qq):
    action = kontsevich_action(qq)
    with pytest.raises(DuplicateComponentError):
        build_slice(action, SliceSpec(vanish=["A1", "C2"], components=[["b", "c"], ["c", "b"]]))
    with pytest.raises(InconsistentComponentError):
        build_slice(action, SliceSpec(vanish=["A1", "C2"], components=[["c"]]))

    with pytest.raises(DivisionError):
        parse_relation(action, "A2")
    with pytest.raises(DivisionError):
        parse_relation(action, "A2 @ b")
    with pytest.raises(SpecFileError):
        parse_relation(action, "b @ B1")
    assert parse_relation(action, "A2*b + B2*d").lead == "b"


# Test canonical relation representatives
def test_canonical_relation(qq, zz):
    mixed = kontsevich_action(qq).mixed
    assert canonical_relation(mixed.parse("2*b + 4*d")) == mixed.parse("b + 2*d")
    integral = kontsevich_action(zz).mixed
    assert canonical_relation(integral.parse("-2*b - 4*d")) == integral.parse("b + 2*d")


# Test flatness of the slice along A1 = 0
def test_flatness(zz):
    action = kontsevich_action(zz)
    report = flatness_check(action, ["A1"], FIBER_FACTORS, action.source.gen("C2"))
    assert report.flat
    assert not report.degenerate

    own = flatness_check(action, ["A1"], FIBER_FACTORS, action.source.gen("A1"))
    assert not own.flat
    assert all(r.is_zero() for r in own.remainders.values())


# Test the fibre over B1 = C1 = 0 is reported degenerate
def test_degenerate_fiber(zz, caplog):
    action = kontsevich_action(zz)
    with caplog.at_level("WARNING"):
        report = flatness_check(action, ["A1", "B1", "C1"], FIBER_FACTORS, action.source.gen("A1"))
    assert not report.flat
    assert report.degenerate
    assert report.pulled.is_zero()
    assert report.remainders == {}
    assert not report
    assert "degenerate fiber" in caplog.text


# Test the unsliced spec yields one component with the full ring
def test_trivial_slice(qq):
    groupoid = build_slice(kontsevich_action(qq), SliceSpec())
    assert [c.label for c in groupoid.components] == ["R1"]
    assert groupoid.ring.nvars == 6
    assert intersect_equalizers(groupoid, 2).dim == 3
    assert SLICE.component_labels() == ["R1", "R2", "R3", "R4"]


# Test the intersection ignores component order
def test_component_order(kontsevich_q):
    for d in (2, 4):
        default = intersect_equalizers(kontsevich_q, d)
        shuffled = intersect_equalizers(kontsevich_q, d, labels=["R4", "R2", "R1", "R3"])
        assert default.span_equals(shuffled.basis)


# Test adding components never enlarges the intersection
def test_component_monotonicity(kontsevich_q):
    chains = [["R1"], ["R1", "R4"], ["R1", "R2", "R4"], ["R1", "R2", "R3", "R4"]]
    for d in range(5):
        dims = [intersect_equalizers(kontsevich_q, d, labels=labels).dim for labels in chains]
        assert dims == sorted(dims, reverse=True)


# Test the single torus component against weight-zero monomials
def test_points_slice_oracle(qq):
    groupoid = build_slice(ordered_points_action(4, qq), first_slice_spec(4))
    ring = groupoid.ring
    assert ring.variables == ("y1", "x2", "y2", "x3", "y3", "x4")
    weights = [1 if name.startswith("x") else -1 for name in ring.variables]
    for d in range(5):
        expected = [m for m in graded_basis(ring, d)
                    if sum(w * e for w, e in zip(weights, m.leading_term()[0])) == 0]
        basis = intersect_equalizers(groupoid, d)
        assert basis.dim == len(expected)
        assert basis.span_equals(expected)
    assert intersect_equalizers(groupoid, 2).dim == 9
