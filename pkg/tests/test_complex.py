import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import component_count, deletion_counts
from topoinc.complex import (
    PointClass,
    TopoModel,
    assemble,
    delete,
    reattach_closure,
    relabel,
    restrict,
    smooth,
    subdivide,
)
from topoinc.errors import BuildError, DomainError
from topoinc.geometry import APEX, COMPRESSED, Point, Segment, h_shape, trapezoid, u_shape
from topoinc.invariants import deletion_count
from topoinc.sequences import BitSeqSpec
from topoinc.spaces import SpaceSpec, a_pieces, build

F = Fraction


def segment_model():
    return assemble([Segment(Point(0, 0), Point(1, 0))])


def test_u_shape_model():
    m = assemble(u_shape(0))
    assert (len(m.vertices), len(m.edges), len(m.components)) == (4, 3, 1)


def test_a_tree_snaps_to_closed_edges():
    m = assemble(a_pieces([4]))
    assert all(s.kind == "vertex" for e in m.edges.values() for s in e.ends)
    assert len(m.edges) == len(m.vertices) - 1 and len(m.components) == 1


def test_y_window_components():
    m = build(SpaceSpec("Y", g=BitSeqSpec.from_window("100", 1), K=1))
    assert len(m.components) == 5
    assert len(m.topological_components) == 1
    assert component_count(m) == 5


def test_crossing_pieces_rejected():
    with pytest.raises(BuildError):
        assemble([Segment(Point(0, 0), Point(2, 2)), Segment(Point(0, 2), Point(2, 0))])


def test_t_junction_split():
    # the H bar ends inside both verticals, which must be cut there
    m = assemble(h_shape(0))
    assert len(m.vertices) == 6 and len(m.edges) == 5
    assert sorted(m.degree(v) for v in m.vertices) == [1, 1, 1, 1, 3, 3]


def test_delete_on_a_segment():
    m = segment_model()
    e = next(iter(m.edges))
    assert len(delete(m, PointClass.edge(e)).components) == 2
    v = min(m.vertices)
    assert len(delete(m, PointClass.vertex(v)).components) == 1


def test_delete_h_junction():
    m = assemble(h_shape(0))
    junction = next(v for v in m.vertices if m.degree(v) == 3)
    assert deletion_count(m, PointClass.vertex(junction)) == 3


def test_delete_unknown_point():
    with pytest.raises(DomainError):
        delete(segment_model(), PointClass.vertex(99))


def test_smooth_examples():
    path = assemble([Segment(Point(0, 0), Point(1, 0)), Segment(Point(1, 0), Point(2, 0)),
                     Segment(Point(2, 0), Point(3, 0))])
    s = smooth(path)
    assert len(s.edges) == 1 and len(s.vertices) == 2
    q = smooth(assemble(trapezoid()))
    assert len(q.vertices) == 1 and len(q.edges) == 1
    (e,) = q.edges.values()
    assert e.ends[0] == e.ends[1]
    u = smooth(assemble(u_shape(0)))
    assert len(u.edges) == 1 and sorted(u.degree(v) for v in u.vertices) == [1, 1]


def test_smooth_keeps_limit_set_endpoints():
    # the verticals are limit sets and must not merge with the bottom bar
    m = build(SpaceSpec("Y", g=BitSeqSpec.from_window("000", 1), K=1))
    s = smooth(m)
    assert len(s.topological_components) == 1
    for e in s.edges.values():
        for end in e.ends:
            if end.kind == "limit":
                assert all(t in s.edges for t in end.targets)


def test_reattach_closure():
    c = build(SpaceSpec("C", g=BitSeqSpec.from_window("100", 1), K=1))
    apex = c.vertex_by_locus()[(COMPRESSED, APEX.x, APEX.y)]
    punctured = delete(c, PointClass.vertex(apex))
    q_index = next(i for i, comp in enumerate(punctured.components)
                   if all(getattr(punctured.edges[e].curve, "frame", None) == COMPRESSED
                          for e in comp.edges))
    closure = reattach_closure(punctured, q_index, apex)
    q = smooth(closure)
    assert len(q.vertices) == 1 and len(q.edges) == 1
    # a U with its tail: closed arc ending at the apex
    u_index = next(i for i, comp in enumerate(punctured.components)
                   if len(comp.edges) == 4 and not any(
                       getattr(punctured.edges[e].curve, "frame", None) == COMPRESSED
                       for e in comp.edges) and all(
                       punctured.edges[e].cls == "arc" for e in comp.edges)
                   and sum(1 for v in comp.vertices if punctured.degree(v) == 3) == 0)
    arc = smooth(reattach_closure(punctured, u_index, apex))
    assert len(arc.edges) == 1 and apex in arc.vertices
    # in QY the Y components never touched the apex
    qy = build(SpaceSpec("QY", g=BitSeqSpec.from_window("100", 1), K=1))
    apex = qy.vertex_by_locus()[(COMPRESSED, APEX.x, APEX.y)]
    punctured = delete(qy, PointClass.vertex(apex))
    no_stub = next(i for i, comp in enumerate(punctured.components)
                   if not any(s.kind == "free" and s.origin == apex
                              for e in comp.edges for s in punctured.edges[e].ends))
    with pytest.raises(DomainError):
        reattach_closure(punctured, no_stub, apex)


def test_restrict_drops_outside_targets():
    m = build(SpaceSpec("Y", g=BitSeqSpec("0", "", "0"), K=1))
    sine = [e for e in m.edges if m.edges[e].cls == "sine"]
    sub = restrict(m, [], sine)
    for e in sub.edges.values():
        assert all(end.targets == () for end in e.ends if end.kind == "limit")


def _random_relabel(model, rng):
    vs = list(model.vertices)
    es = list(model.edges)
    new_v = rng.sample(range(100, 100 + 3 * len(vs)), len(vs))
    new_e = rng.sample(range(100, 100 + 3 * len(es)), len(es))
    return relabel(model, dict(zip(vs, new_v)), dict(zip(es, new_e)))


@pytest.mark.parametrize("spec", [
    SpaceSpec("A", M=[4, 6]),
    SpaceSpec("X", g=BitSeqSpec.from_window("110", 1), K=1),
    SpaceSpec("C", g=BitSeqSpec("1", "0", "10"), K=1),
])
def test_json_round_trip_and_relabel(spec):
    m = build(spec)
    text = json.dumps(m.to_json(), sort_keys=True)
    back = TopoModel.from_json(json.loads(text))
    assert json.dumps(back.to_json(), sort_keys=True) == text
    r = _random_relabel(m, random.Random(3))
    assert len(r.components) == len(m.components)
    assert sorted(deletion_counts(r).values()) == sorted(deletion_counts(m).values())


def test_from_json_rejects_garbage():
    with pytest.raises(DomainError):
        TopoModel.from_json({"vertices": [{"nope": 1}], "edges": []})


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(4, 8), min_size=1, max_size=3, unique=True), st.data())
def test_subdivide_keeps_deletion_profile(M, data):
    # subdividing an edge adds one degree-2 vertex and changes nothing else
    m = build(SpaceSpec("A", M=sorted(M)))
    eid = data.draw(st.sampled_from(sorted(m.edges)))
    t = data.draw(st.fractions(min_value=F(1, 10), max_value=F(9, 10)))
    m2, v = subdivide(m, eid, t)
    assert m2.degree(v) == 2
    assert len(m2.components) == len(m.components)
    assert deletion_count(m2, PointClass.vertex(v)) == deletion_count(m, PointClass.edge(eid))
    assert len(smooth(m2).edges) == len(smooth(m).edges)
