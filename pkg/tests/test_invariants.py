from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import a_tree_graph, deletion_counts, tree_spectrum
from topoinc.complex import PointClass, SinePiece, assemble, subdivide
from topoinc.errors import DomainError
from topoinc.geometry import (
    APEX,
    COMPRESSED,
    PLANE,
    Point,
    Segment,
    SineArc,
    h_shape,
    limit_vertical,
    trapezoid,
    u_shape,
)
from topoinc.invariants import (
    classify_component,
    component_word,
    cut_points,
    cutfree_closure_components,
    deletion_count,
    noncut_points,
    p_spectrum,
    path_components,
    smoothed_classification,
    super_cut_scan,
    topological_components,
    triple_points,
    x_part,
)
from topoinc.sequences import BitSeqSpec
from topoinc.spaces import SpaceSpec, build

F = Fraction


def y(word, kind="Y"):
    K = len(word) // 2
    return build(SpaceSpec(kind, g=BitSeqSpec.from_window(word, K), K=K))


def sine_with_verticals(k=0):
    arc = SineArc(k)
    return assemble([limit_vertical(arc.left_limit_x), limit_vertical(arc.right_limit_x), SinePiece(arc)])


def test_component_counts():
    assert len(path_components(assemble(u_shape(0)))) == 1
    assert len(path_components(sine_with_verticals())) == 3
    assert len(path_components(y("11000"))) == 9
    assert len(topological_components(sine_with_verticals())) == 1
    for word in ("100", "10110", "0110100"):
        assert len(topological_components(y(word))) == 1
    two = assemble(u_shape(0) + u_shape(3))
    assert len(topological_components(two)) == 2


def test_deletion_counts_in_a_tree():
    m = build(SpaceSpec("A", M=[4, 6]))
    loc = m.vertex_by_locus()
    top6 = loc[(PLANE, F(1, 64), F(1, 64))]
    assert deletion_count(m, PointClass.vertex(top6)) == 6
    assert deletion_count(m, PointClass.vertex(loc[(PLANE, F(1, 16), F(0))])) == 3
    assert deletion_count(m, PointClass.vertex(loc[(PLANE, F(1), F(0))])) == 1


def test_deletion_counts_match_networkx_oracle():
    for model in (build(SpaceSpec("A", M=[4, 5, 7])), y("10110", "X"), y("100", "C")):
        oracle = deletion_counts(model)
        for p in model.point_classes():
            key = ("vertex" if p.kind == "vertex" else "edge", p.ref)
            assert deletion_count(model, p) == oracle[key]


def test_spectrum():
    assert p_spectrum(build(SpaceSpec("A", M=[4, 6]))).values == [1, 2, 3, 4, 6]
    assert p_spectrum(build(SpaceSpec("A", M=[4]))).values == [1, 2, 3, 4]
    assert p_spectrum(assemble([Segment(Point(0, 0), Point(1, 0))])).values == [1, 2]
    assert set(p_spectrum(build(SpaceSpec("A", M=[4, 6]))).values) == tree_spectrum(a_tree_graph([4, 6]))


def test_noncut_points():
    assert len(noncut_points(assemble(u_shape(0)), 0)) == 2
    assert len(noncut_points(assemble(h_shape(0)), 0)) == 4
    m = sine_with_verticals()
    sine_comp = next(c for c in m.components if any(m.edges[e].cls == "sine" for e in c.edges))
    assert noncut_points(m, sine_comp) == set()
    assert cut_points(m, sine_comp) == {PointClass.edge(e) for e in sine_comp.edges}


def test_triple_points_in_x_components():
    base, comps = x_part(y("100", "X"))
    by_kind = {}
    for c in comps:
        by_kind.setdefault(classify_component(base, c), []).append(len(triple_points(base, c)))
    assert set(by_kind["S"]) == {1}
    assert set(by_kind["H"]) == {2}
    assert set(by_kind["U"]) == {0}


def test_super_cut_scan():
    spec = SpaceSpec("C", g=BitSeqSpec.from_window("100", 1), K=1)
    scan = super_cut_scan(spec, 1, 2)
    apex = (COMPRESSED, APEX.x, APEX.y)
    assert scan["super_cut"] == [apex]
    assert scan["counts"][apex] == (6, 10)
    assert all(c1 == c2 for locus, (c1, c2) in scan["counts"].items() if locus != apex)
    with pytest.raises(DomainError):
        super_cut_scan(spec, 1, 1)
    with pytest.raises(DomainError):
        super_cut_scan(SpaceSpec("Y", g=spec.g, K=1), 1, 2)


def test_component_words():
    assert component_word(y("100")).text == "HSUSU"
    assert component_word(y("100", "X")).text == "HSUSU"
    assert component_word(y("100", "C")).text == "HSUSU"
    assert component_word(y("100", "QY")).text == "HSUSU"
    q_only = assemble(trapezoid())
    with pytest.raises(DomainError):
        component_word(q_only)


def test_cutfree_closure():
    c = y("100", "C")
    apex = c.vertex_by_locus()[(COMPRESSED, APEX.x, APEX.y)]
    found = cutfree_closure_components(c, apex)
    assert len(found) == 1
    q = assemble(trapezoid())
    q_apex = q.vertex_by_locus()[(COMPRESSED, APEX.x, APEX.y)]
    assert cutfree_closure_components(q, q_apex) == [0]
    with pytest.raises(DomainError):
        cutfree_closure_components(c, 999)


def test_classification_survives_smoothing():
    for kind in ("Y", "X"):
        m = y("10110", kind)
        assert sorted(smoothed_classification(m)) == sorted(component_word(m).symbols)


@settings(max_examples=25, deadline=None)
@given(st.text("01", min_size=3, max_size=7).filter(lambda w: len(w) % 2 == 1), st.data())
def test_classification_invariant_under_subdivision(word, data):
    m = y(word, "X")
    eid = data.draw(st.sampled_from(sorted(m.edges)))
    m2, _ = subdivide(m, eid)
    assert component_word(m2).symbols == component_word(m).symbols
