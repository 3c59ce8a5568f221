import pytest

from gslice.core.errors import DegreeConditionError, ShapeError
from gslice.models.ordered_points import (
    bracket,
    constraint_report,
    first_slice_spec,
    graph_invariant,
    hmsv_first_slice,
    hmsv_second_slice,
    matching_invariants_hold,
    ordered_points_action,
    perfect_matchings,
)
from gslice.schemas.slice import GraphInvariantSpec
from gslice.services.action import is_invariant


# Test graph invariants are invariant
def test_graph_invariants(qq):
    action = ordered_points_action(4, qq)
    matching = GraphInvariantSpec(n=4, edges=[(1, 2), (3, 4)])
    cycle = GraphInvariantSpec(n=4, edges=[(1, 2), (2, 3), (3, 4), (4, 1)])
    assert matching.degree == 1
    assert cycle.degree == 2
    assert is_invariant(action, graph_invariant(matching, qq))
    assert is_invariant(action, graph_invariant(cycle, qq))
    assert is_invariant(action, bracket(action.source, 1, 3))
    assert not is_invariant(action, action.source.parse("x1*y2"))


# Test the vertex degree condition
def test_graph_degree_condition():
    with pytest.raises(DegreeConditionError):
        GraphInvariantSpec(n=4, edges=[(1, 2), (2, 3)])
    with pytest.raises(DegreeConditionError):
        GraphInvariantSpec(n=4, edges=[(1, 1), (2, 3)])
    with pytest.raises(DegreeConditionError):
        GraphInvariantSpec(n=3, edges=[(1, 4)])


# Test perfect matchings
def test_perfect_matchings(qq, f2):
    assert len(list(perfect_matchings(4))) == 3
    assert len(list(perfect_matchings(6))) == 15
    assert list(perfect_matchings(3)) == []
    assert matching_invariants_hold(4, qq)
    assert matching_invariants_hold(4, f2)


# Test the point count is checked
def test_shape_errors(qq):
    with pytest.raises(ShapeError):
        ordered_points_action(1, qq)
    with pytest.raises(ShapeError):
        hmsv_first_slice(5)
    with pytest.raises(ShapeError):
        hmsv_second_slice(2)


# Test the first description for four points
def test_first_description_four_points():
    description = hmsv_first_slice(4)
    assert first_slice_spec(4).vanish == ["x1", "y4"]
    assert [g.name for g in description.presentation.generators] == ["W23"]
    assert description.presentation.relations == []
    assert description.table(4) == [(d, 1, 1, 1) for d in range(5)]
    assert description.verify(4)


# Test the first description for six points: a 2 x 2 rank-one matrix
def test_first_description_six_points():
    description = hmsv_first_slice(6)
    assert description.chart_weights == {"x2": 1, "x3": 1, "y4": -1, "y5": -1}
    assert len(description.presentation.relations) == 1
    assert description.presentation.failing_relations() == []
    assert [row[1] for row in description.table(4)] == [1, 4, 9, 16, 25]
    assert description.verify(4)


# Test the second description for four points
def test_second_description_four_points():
    description = hmsv_second_slice(4)
    assert [g.name for g in description.presentation.generators] == ["B3", "C3", "F33"]
    assert [row[1] for row in description.table(4)] == [1, 2, 4, 6, 9]
    assert description.verify(4)
    assert description.to_slice(description.chart.gen("B3")) == description.groupoid.ring.parse("x3*y4")
    assert all(ok for _, ok in constraint_report(description))


# Test the second description for six points in degree 2
def test_second_description_six_points():
    description = hmsv_second_slice(6)
    assert description.table(2)[2] == (2, 14, 14, 14)
    assert description.presentation.failing_relations() == []
    assert all(ok for _, ok in constraint_report(description))
