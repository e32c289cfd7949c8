import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import check_embedding_witness
from topoinc.complex import assemble, relabel, smooth, subdivide
from topoinc.errors import BudgetExceeded
from topoinc.geometry import Point, Segment, h_shape, u_shape
from topoinc.homeo import canonical_code, embeds, incomparability_report, is_homeomorphic
from topoinc.sequences import BitSeqSpec
from topoinc.spaces import SpaceSpec, build


def A(*M):
    return build(SpaceSpec("A", M=list(M)))


def seq(kind, word):
    K = len(word) // 2
    return build(SpaceSpec(kind, g=BitSeqSpec.from_window(word, K), K=K))


def shuffled(model, seed):
    rng = random.Random(seed)
    vs, es = list(model.vertices), list(model.edges)
    nv = rng.sample(range(len(vs) * 3), len(vs))
    ne = rng.sample(range(len(es) * 3), len(es))
    return relabel(model, dict(zip(vs, nv)), dict(zip(es, ne)))


def segment():
    return assemble([Segment(Point(0, 0), Point(1, 0))])


def test_canonical_code_examples():
    assert canonical_code(A(4, 6)) == canonical_code(shuffled(A(4, 6), 1))
    assert canonical_code(A(4, 6)) != canonical_code(A(4, 7))
    assert canonical_code(assemble(u_shape(0))) != canonical_code(assemble(h_shape(0)))
    y = seq("C", "10110")
    assert canonical_code(y) == canonical_code(shuffled(y, 2))


@pytest.mark.parametrize("kind", ["Y", "X", "C", "QY"])
def test_codes_ignore_ids_and_subdivision(kind):
    m = seq(kind, "10011")
    r = shuffled(m, 5)
    s, _ = subdivide(r, sorted(r.edges)[3])
    assert canonical_code(m) == canonical_code(s)
    ok, witness = is_homeomorphic(m, s)
    assert ok and len(witness["vertices"]) == len(smooth(m).vertices)


def test_is_homeomorphic_examples():
    ok, witness = is_homeomorphic(seq("Y", "100"), seq("Y", "001"))
    assert ok
    # the witness reverses the order of the components
    assert witness["vertices"]
    assert not is_homeomorphic(seq("Y", "100"), seq("Y", "010"))[0]
    m = A(4, 6)
    ok, witness = is_homeomorphic(m, m)
    assert ok
    assert witness["edges"] == {e: e for e in smooth(m).edges}


def test_witness_is_an_isomorphism():
    m1 = seq("X", "11010")
    m2 = shuffled(m1, 9)
    ok, w = is_homeomorphic(m1, m2)
    assert ok
    s1, s2 = smooth(m1), smooth(m2)
    vmap, emap = w["vertices"], w["edges"]
    assert sorted(vmap.values()) == sorted(s2.vertices)
    for eid, e in s1.edges.items():
        e2 = s2.edges[emap[eid]]
        ends1 = sorted((s.kind, vmap.get(s.vertex), tuple(sorted(emap[t] for t in s.targets))) for s in e.ends)
        ends2 = sorted((s.kind, s.vertex, s.targets) for s in e2.ends)
        assert ends1 == ends2
        assert e.cls == e2.cls


def test_embedding_examples():
    assert embeds(A(4), A(5))[0]
    assert not embeds(A(5), A(4))[0]
    ok, witness = embeds(A(4, 6), A(5, 7, 9))
    assert ok and witness["conservative"] is False
    assert check_embedding_witness(smooth(A(4, 6)), smooth(A(5, 7, 9)), witness) == []


def test_embedding_on_sine_models_is_flagged():
    ok, witness = embeds(seq("Y", "010"), seq("Y", "10100"))
    assert ok and witness["conservative"]
    assert not embeds(seq("Y", "100"), seq("Y", "010"))[0]


def test_embedding_budget():
    big = A(*range(4, 13))
    with pytest.raises(BudgetExceeded):
        embeds(big, big)
    assert embeds(A(4), A(4), budget=10)[0]
    with pytest.raises(BudgetExceeded):
        embeds(A(4, 6), A(5, 7, 9), steps=3)


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("TOPOINC_BUDGET", "5")
    with pytest.raises(BudgetExceeded):
        embeds(A(4), A(5))


def test_incomparability_report():
    rep = incomparability_report([A(4), A(5)])
    assert rep["embeds"] == [[True, True], [False, True]]
    assert rep["incomparable"] == [[False, False], [False, False]]
    rep = incomparability_report([segment(), segment()])
    assert rep["embeds"] == [[True, True], [True, True]]
    assert incomparability_report([])["embeds"] == []


CORPUS = [A(4), A(5), A(4, 6), A(5, 7), segment(), assemble(u_shape(0)), assemble(h_shape(0))]


def test_embeds_reflexive_and_transitive_on_corpus():
    n = len(CORPUS)
    e = [[embeds(a, b)[0] for b in CORPUS] for a in CORPUS]
    assert all(e[i][i] for i in range(n))
    for i, j, k in itertools.product(range(n), repeat=3):
        if e[i][j] and e[j][k]:
            assert e[i][k], (i, j, k)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["100", "110", "10110", "01101"]), st.sampled_from(["Y", "X", "C"]))
def test_homeomorphic_implies_mutual_embedding(word, kind):
    m1 = seq(kind, word)
    m2 = shuffled(m1, 4)
    assert is_homeomorphic(m1, m2)[0]
    assert embeds(m1, m2)[0] and embeds(m2, m1)[0]
