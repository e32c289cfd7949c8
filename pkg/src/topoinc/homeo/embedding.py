"""Backtracking search for topological embeddings between finite models.

An embedding of ``m1`` into ``m2`` is found on the smoothed models as a
map of *anchor* vertices of ``m1`` (branch points, cycle bases, sine and
limit-set endpoints) to distinct vertices of ``m2``, plus a routing of every
arc between anchors along an internally disjoint path of arc edges.  Leaf
edges only need a spare port at the image of their anchor; free-floating
arcs and isolated points need an unused edge somewhere.

Sine edges are matched typewise: a sine edge goes onto a sine edge of the
same shape, and each of its limit ends onto a limit end whose target arc
receives the original target arc exactly.  This is sound, but may miss
exotic embeddings, so results on sine-bearing models carry
``"conservative": True``.
"""
from __future__ import annotations

import os
from itertools import combinations

from ..complex import TopoModel, smooth
from ..errors import BudgetExceeded, DomainError

DEFAULT_NODE_BUDGET = 64
DEFAULT_STEP_BUDGET = 500_000


def node_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    return int(os.environ.get("TOPOINC_BUDGET", DEFAULT_NODE_BUDGET))


def _arc_path(model: TopoModel, edges):
    """(vertex sequence, edge sequence) if ``edges`` form a simple arc."""
    if not edges:
        return None
    adj = {}
    for eid in edges:
        e = model.edges[eid]
        vs = e.vertex_ends()
        if e.cls != "arc" or len(vs) != 2 or vs[0] == vs[1]:
            return None
        for a, b in (vs, vs[::-1]):
            adj.setdefault(a, []).append((eid, b))
    ends = sorted(v for v, nb in adj.items() if len(nb) == 1)
    if len(ends) != 2 or any(len(nb) > 2 for nb in adj.values()):
        return None
    vseq, eseq = [ends[0]], []
    prev = None
    while len(eseq) < len(edges):
        nxt = [(eid, b) for eid, b in adj[vseq[-1]] if eid != prev]
        if not nxt:
            return None
        prev, b = nxt[0]
        eseq.append(prev)
        vseq.append(b)
    if vseq[-1] != ends[1] or len(set(vseq)) != len(vseq):
        return None
    return tuple(vseq), tuple(eseq)


class _Side:
    def __init__(self, model: TopoModel, strict: bool):
        self.m = model
        self.inc = model.incidence
        self.deg = {v: len(p) for v, p in self.inc.items()}
        self.sine = sorted(e for e, x in model.edges.items() if x.cls == "sine")
        self.arcs = {}  # limit end -> (vseq, eseq) or None
        self.target_edges = set()
        for eid in sorted(model.edges):
            e = model.edges[eid]
            for i, s in enumerate(e.ends):
                if s.kind != "limit":
                    continue
                path = _arc_path(model, s.targets)
                if path is None and strict:
                    raise DomainError(
                        f"embedding needs limit targets forming an arc (edge {eid} end {i})"
                    )
                self.arcs[(eid, i)] = path
                self.target_edges.update(s.targets)
        for eid in self.sine:
            shape = self.shape(eid)
            if shape is None and strict:
                raise DomainError(f"embedding of cut sine edge {eid} is unsupported")

    def shape(self, eid):
        kinds = tuple(s.kind for s in self.m.edges[eid].ends)
        if kinds == ("limit", "limit"):
            return "full"
        if sorted(kinds) == ["limit", "vertex"]:
            return "ray"
        return None


class _State:
    __slots__ = ("vmap", "used_v", "used_e", "routes", "sinemap", "lmap")

    def __init__(self):
        self.vmap = {}
        self.used_v = set()
        self.used_e = set()
        self.routes = {}
        self.sinemap = {}
        self.lmap = {}

    def copy(self):
        s = _State()
        s.vmap = dict(self.vmap)
        s.used_v = set(self.used_v)
        s.used_e = set(self.used_e)
        s.routes = dict(self.routes)
        s.sinemap = dict(self.sinemap)
        s.lmap = dict(self.lmap)
        return s


class _Embedder:
    def __init__(self, m1: TopoModel, m2: TopoModel, steps: int):
        self.g1 = _Side(m1, strict=True)
        self.g2 = _Side(m2, strict=False)
        self.max_steps = steps
        self.steps = 0
        g1 = self.g1
        special = set()
        for eid in g1.sine:
            special.update(g1.m.edges[eid].vertex_ends())
        for eid in g1.target_edges:
            special.update(g1.m.edges[eid].vertex_ends())
        self.anchors = {
            v for v, d in g1.deg.items() if d >= 2 or (d >= 1 and v in special)
        }
        self.links, self.floating = [], []
        self.stubs = {v: 0 for v in self.anchors}
        self.isolated = [v for v, d in g1.deg.items() if d == 0]
        for eid in sorted(m1.edges):
            e = m1.edges[eid]
            if e.cls == "sine":
                continue
            at = [s.vertex for s in e.ends if s.is_vertex and s.vertex in self.anchors]
            if len(at) == 2:
                self.links.append(eid)
            elif len(at) == 1:
                self.stubs[at[0]] += 1
            else:
                self.floating.append(eid)

    # -- feasibility ------------------------------------------------------

    def _can_map(self, st, v, w):
        if v in st.vmap:
            return st.vmap[v] == w
        return w not in st.used_v and self.g2.deg[w] >= self.g1.deg[v]

    def _map(self, st, v, w):
        if v not in st.vmap:
            st.vmap[v] = w
            st.used_v.add(w)

    def _tick(self):
        self.steps += 1
        if self.steps > self.max_steps:
            raise BudgetExceeded(f"embedding search exceeded {self.max_steps} steps")

    # -- routing -----------------------------------------------------------

    def _paths(self, st, start, goal, free_end):
        """Simple arc paths from G2 vertex ``start``.

        With ``goal`` set, paths end at ``goal``; with ``free_end`` set (a G1
        anchor), a path may end at any unused vertex that can host it.
        Yields (edge list, end vertex).
        """
        g2 = self.g2
        path_e, path_v = [], {start}

        def walk(x):
            self._tick()
            for eid, i in g2.inc[x]:
                if eid in st.used_e or eid in path_e or g2.m.edges[eid].cls != "arc":
                    continue
                other = g2.m.edges[eid].ends[1 - i]
                if not other.is_vertex:
                    continue
                y = other.vertex
                path_e.append(eid)
                if goal is not None and y == goal:
                    yield list(path_e), y
                elif y not in st.used_v and y not in path_v:
                    if free_end is not None and self._can_map(st, free_end, y):
                        yield list(path_e), y
                    path_v.add(y)
                    yield from walk(y)
                    path_v.discard(y)
                path_e.pop()

        yield from walk(start)

    def _apply_route(self, st, e1, edges, a2):
        st.routes[e1] = edges
        st.used_e.update(edges)
        x = a2
        for eid in edges[:-1]:
            e = self.g2.m.edges[eid]
            vs = e.vertex_ends()
            x = vs[1] if vs[0] == x else vs[0]
            st.used_v.add(x)

    # -- limit arcs -----------------------------------------------------------

    def _map_limit(self, st, l1, l2):
        """All ways of sending the target arc of ``l1`` exactly onto that of ``l2``."""
        p = self.g1.arcs[l1]
        q = self.g2.arcs.get(l2)
        if q is None:
            return
        pv, pe = p
        a, b = len(pe), len(q[1])
        if b < a:
            return
        for qv, qe in (q, (q[0][::-1], q[1][::-1])):
            for cuts in combinations(range(1, b), a - 1):
                self._tick()
                idx = (0,) + cuts + (b,)
                s = st.copy()
                if self._place_arc(s, pv, pe, qv, qe, idx):
                    s.lmap[l1] = l2
                    yield s

    def _place_arc(self, st, pv, pe, qv, qe, idx):
        for j, v in enumerate(pv):
            if not self._can_map(st, v, qv[idx[j]]):
                return False
            self._map(st, v, qv[idx[j]])
        for j, e1 in enumerate(pe):
            seg = list(qe[idx[j]:idx[j + 1]])
            inner = qv[idx[j] + 1:idx[j + 1]]
            if e1 in st.routes:
                if st.routes[e1] != seg and st.routes[e1] != seg[::-1]:
                    return False
                continue
            if any(x in st.used_e for x in seg) or any(x in st.used_v for x in inner):
                return False
            st.routes[e1] = seg
            st.used_e.update(seg)
            st.used_v.update(inner)
        return True

    # -- sine edges -------------------------------------------------------------

    def _sine_options(self, st, e1):
        g1, g2 = self.g1, self.g2
        shape = g1.shape(e1)
        E1 = g1.m.edges[e1]
        for e2 in g2.sine:
            if e2 in st.used_e or g2.shape(e2) != shape:
                continue
            E2 = g2.m.edges[e2]
            for flip in (0, 1):
                pairs = [(i, i ^ flip) for i in (0, 1)]
                if any(E1.ends[i].kind != E2.ends[j].kind for i, j in pairs):
                    continue
                s = st.copy()
                s.used_e.add(e2)
                s.sinemap[e1] = (e2, flip)
                ok = True
                for i, j in pairs:
                    if E1.ends[i].is_vertex:
                        v, w = E1.ends[i].vertex, E2.ends[j].vertex
                        if not self._can_map(s, v, w):
                            ok = False
                            break
                        self._map(s, v, w)
                if not ok:
                    continue
                states = [s]
                for i, j in pairs:
                    if E1.ends[i].kind == "limit":
                        states = [t for x in states for t in self._map_limit(x, (e1, i), (e2, j))]
                yield from states

    # -- driver -----------------------------------------------------------------

    def _constrained_sine(self, st, e1):
        E1 = self.g1.m.edges[e1]
        for i, s in enumerate(E1.ends):
            if s.is_vertex and s.vertex in st.vmap:
                return True
            if s.kind == "limit" and any(v in st.vmap for v in self.g1.arcs[(e1, i)][0]):
                return True
        return False

    def _next_task(self, st):
        g1 = self.g1
        pending_links = [e for e in self.links if e not in st.routes]
        pending_sine = [e for e in g1.sine if e not in st.sinemap]
        for e in pending_links:
            a, b = g1.m.edges[e].vertex_ends()
            if a in st.vmap and b in st.vmap:
                return ("link", e)
        for e in pending_sine:
            if self._constrained_sine(st, e):
                return ("sine", e)
        for e in pending_links:
            a, b = g1.m.edges[e].vertex_ends()
            if a in st.vmap or b in st.vmap:
                return ("link", e)
        if pending_sine:
            return ("sine", pending_sine[0])
        unmapped = [v for v in self.anchors if v not in st.vmap]
        if unmapped:
            return ("anchor", max(unmapped, key=lambda v: (g1.deg[v], -v)))
        return None

    def search(self, st):
        self._tick()
        task = self._next_task(st)
        if task is None:
            return self._finish(st)
        kind, x = task
        g1 = self.g1
        if kind == "anchor":
            for w in sorted(self.g2.m.vertices):
                if self._can_map(st, x, w):
                    s = st.copy()
                    self._map(s, x, w)
                    out = self.search(s)
                    if out is not None:
                        return out
            return None
        if kind == "sine":
            for s in self._sine_options(st, x):
                out = self.search(s)
                if out is not None:
                    return out
            return None
        a, b = g1.m.edges[x].vertex_ends()
        if a not in st.vmap:
            a, b = b, a
        a2 = st.vmap[a]
        goal = st.vmap.get(b)
        for edges, end in self._paths(st, a2, goal, None if goal is not None else b):
            s = st.copy()
            self._map(s, b, end)
            self._apply_route(s, x, edges, a2)
            out = self.search(s)
            if out is not None:
                return out
        return None

    def _finish(self, st):
        g2 = self.g2
        stubs = {}
        for v, need in sorted(self.stubs.items()):
            if not need:
                continue
            w = st.vmap[v]
            ports = [(e, i) for e, i in g2.inc[w] if e not in st.used_e]
            if len(ports) < need:
                return None
            stubs[v] = ports[:need]
        spare_edges = sorted(set(g2.m.edges) - st.used_e)
        spare_vertices = sorted(set(g2.m.vertices) - st.used_v)
        if self.floating and not spare_edges:
            return None
        if self.isolated and not (spare_edges or spare_vertices):
            return None
        return st, stubs, spare_edges


def embeds(m1: TopoModel, m2: TopoModel, budget: int | None = None, steps: int | None = None):
    """Whether ``m1`` is homeomorphic to a subspace of ``m2``.

    Returns ``(result, witness)``; the witness is a dict when an embedding
    was found and ``None`` otherwise.  Raises :class:`BudgetExceeded` when
    either smoothed model has more vertices than the node budget or the
    search runs out of steps.
    """
    s1, s2 = smooth(m1), smooth(m2)
    limit = node_budget(budget)
    for name, s in (("first", s1), ("second", s2)):
        if len(s.vertices) > limit:
            raise BudgetExceeded(
                f"{name} model has {len(s.vertices)} smoothed vertices; budget is {limit}"
            )
    if steps is None:
        steps = int(os.environ.get("TOPOINC_EMBED_STEPS", DEFAULT_STEP_BUDGET))
    emb = _Embedder(s1, s2, steps)
    found = emb.search(_State())
    conservative = bool(emb.g1.sine or emb.g2.sine)
    if found is None:
        return False, None
    st, stubs, spare = found
    witness = {
        "vertices": dict(sorted(st.vmap.items())),
        "routes": {e: list(r) for e, r in sorted(st.routes.items())},
        "sine": {e: m[0] for e, m in sorted(st.sinemap.items())},
        "limits": {f"{e}:{i}": f"{e2}:{i2}" for (e, i), (e2, i2) in sorted(st.lmap.items())},
        "stubs": {v: [list(p) for p in ports] for v, ports in stubs.items()},
        "floating_host": spare[0] if emb.floating else None,
        "conservative": conservative,
        "smoothed": (s1, s2),
    }
    return True, witness


def witness_to_json(witness: dict | None):
    if witness is None:
        return None
    return {
        k: ({str(a): b for a, b in v.items()} if isinstance(v, dict) else v)
        for k, v in witness.items()
        if k != "smoothed"
    }


def incomparability_report(models) -> dict:
    """Embedding matrix in both directions and the derived incomparability."""
    models = list(models)
    n = len(models)
    emb = [[False] * n for _ in range(n)]
    conservative = False
    for i in range(n):
        for j in range(n):
            ok, wit = embeds(models[i], models[j])
            emb[i][j] = ok
            conservative = conservative or (wit or {}).get("conservative", False) or any(
                e.cls == "sine" for m in (models[i], models[j]) for e in m.edges.values()
            )
    incomparable = [
        [i != j and not emb[i][j] and not emb[j][i] for j in range(n)] for i in range(n)
    ]
    return {"embeds": emb, "incomparable": incomparable, "conservative": conservative}
