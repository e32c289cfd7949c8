"""Canonical certificates and isomorphism of smoothed, decorated models.

Forests get an AHU encoding.  Everything else is turned into a coloured
digraph (vertex nodes, edge nodes, limit-end nodes) and canonically labelled
by individualisation-refinement with automorphism pruning.
"""
from __future__ import annotations

import json
import os

from ..complex import TopoModel, smooth
from ..errors import BudgetExceeded

DEFAULT_STEP_BUDGET = 200_000


def step_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    return int(os.environ.get("TOPOINC_SEARCH_BUDGET", DEFAULT_STEP_BUDGET))


# --- forests ---------------------------------------------------------------


def _is_forest(m: TopoModel) -> bool:
    from ..complex import DisjointSet

    ds = DisjointSet(m.vertices)
    for e in m.edges.values():
        if e.cls != "arc" or any(s.kind == "limit" for s in e.ends):
            return False
        vs = e.vertex_ends()
        if len(vs) == 2:
            if ds.find(vs[0]) == ds.find(vs[1]):
                return False
            ds.union(vs[0], vs[1])
    return True


class _Forest:
    """Abstract labelled forest: model vertices ('v') plus one 'f' node per free end."""

    def __init__(self, m: TopoModel):
        self.label = {}
        self.adj = {}
        self.edge_of = {}  # frozenset{a, b} -> model edge id
        for v in sorted(m.vertices):
            self._node(("v", v), "v")
        for eid in sorted(m.edges):
            e = m.edges[eid]
            ends = []
            for i, s in enumerate(e.ends):
                if s.is_vertex:
                    ends.append(("v", s.vertex))
                else:
                    ends.append(self._node(("f", eid, i), "f"))
            a, b = ends
            self.adj[a].append(b)
            self.adj[b].append(a)
            self.edge_of[frozenset((a, b))] = eid

    def _node(self, key, label):
        self.label[key] = label
        self.adj[key] = []
        return key

    def components(self):
        seen, out = set(), []
        for start in self.label:
            if start in seen:
                continue
            comp, stack = [], [start]
            seen.add(start)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            out.append(comp)
        return out

    def centers(self, comp):
        if len(comp) <= 2:
            return sorted(comp)
        deg = {x: len(self.adj[x]) for x in comp}
        layer = [x for x in comp if deg[x] <= 1]
        remaining = len(comp)
        while remaining > 2:
            remaining -= len(layer)
            nxt = []
            for x in layer:
                for y in self.adj[x]:
                    deg[y] -= 1
                    if deg[y] == 1:
                        nxt.append(y)
            layer = nxt
        return sorted(layer)

    def code(self, x, parent):
        kids = sorted(self.code(y, x) for y in self.adj[x] if y != parent)
        return self.label[x] + "(" + "".join(kids) + ")"

    def rooted(self, comp):
        """(code, roots) where roots is one node or an ordered center pair."""
        cs = self.centers(comp)
        if len(cs) == 1:
            return self.code(cs[0], None), (cs[0],)
        a, b = cs
        ca, cb = self.code(a, b), self.code(b, a)
        if cb < ca:
            a, b, ca, cb = b, a, cb, ca
        return "[" + ca + cb + "]", (a, b)

    def match(self, other: "_Forest", x, px, y, py, out):
        out[x] = y
        kids_x = sorted((self.code(c, x), c) for c in self.adj[x] if c != px)
        kids_y = sorted((other.code(c, y), c) for c in other.adj[y] if c != py)
        for (_, cx), (_, cy) in zip(kids_x, kids_y):
            self.match(other, cx, x, cy, y, out)


def _forest_code(m: TopoModel) -> str:
    f = _Forest(m)
    return "|".join(sorted(f.rooted(c)[0] for c in f.components()))


def _forest_witness(m1: TopoModel, m2: TopoModel) -> dict:
    f1, f2 = _Forest(m1), _Forest(m2)
    r1 = sorted((f1.rooted(c), i) for i, c in enumerate(f1.components()))
    r2 = sorted((f2.rooted(c), i) for i, c in enumerate(f2.components()))
    node_map = {}
    for ((code1, roots1), _), ((code2, roots2), _) in zip(r1, r2):
        assert code1 == code2
        if len(roots1) == 1:
            f1.match(f2, roots1[0], None, roots2[0], None, node_map)
        else:
            a1, b1 = roots1
            a2, b2 = roots2
            if f1.code(a1, b1) != f2.code(a2, b2):
                a2, b2 = b2, a2
            f1.match(f2, a1, b1, a2, b2, node_map)
            f1.match(f2, b1, a1, b2, a2, node_map)
    vertices = {x[1]: y[1] for x, y in node_map.items() if x[0] == "v"}
    edges = {}
    for pair, eid in f1.edge_of.items():
        a, b = tuple(pair)
        edges[eid] = f2.edge_of[frozenset((node_map[a], node_map[b]))]
    return {"vertices": vertices, "edges": edges}


# --- general models --------------------------------------------------------


class _Digraph:
    def __init__(self, m: TopoModel):
        nodes = [("v", v) for v in sorted(m.vertices)] + [("e", e) for e in sorted(m.edges)]
        limits = [
            (eid, i) for eid in sorted(m.edges) for i, s in enumerate(m.edges[eid].ends)
            if s.kind == "limit"
        ]
        nodes += [("l", x) for x in limits]
        self.nodes = nodes
        index = {x: i for i, x in enumerate(nodes)}
        labels = []
        for kind, ref in nodes:
            if kind == "v":
                labels.append(("V", "", 0))
            elif kind == "e":
                e = m.edges[ref]
                labels.append(("E", e.cls, sum(1 for s in e.ends if s.kind == "free")))
            else:
                labels.append(("L", "", 0))
        self.labels = labels
        arcs = []
        for eid in sorted(m.edges):
            e = m.edges[eid]
            for i, s in enumerate(e.ends):
                if s.is_vertex:
                    arcs.append((index[("e", eid)], "inc", index[("v", s.vertex)]))
                elif s.kind == "limit":
                    ln = index[("l", (eid, i))]
                    arcs.append((ln, "own", index[("e", eid)]))
                    for t in s.targets:
                        arcs.append((ln, "tgt", index[("e", t)]))
        self.arcs = arcs
        self.adj = [[] for _ in nodes]
        for u, lab, v in arcs:
            self.adj[u].append((lab + ">", v))
            self.adj[v].append((lab + "<", u))
        order = sorted(set(labels))
        rank = {x: i for i, x in enumerate(order)}
        self.initial = [rank[x] for x in labels]

    def refine(self, colors):
        n = len(colors)
        ncls = len(set(colors))
        adj = self.adj
        while True:
            sigs = [
                (colors[x], tuple(sorted((lab, colors[y]) for lab, y in adj[x])))
                for x in range(n)
            ]
            order = sorted(set(sigs))
            rank = {s: i for i, s in enumerate(order)}
            colors = [rank[s] for s in sigs]
            if len(order) == ncls:
                return colors
            ncls = len(order)

    def certificate(self, colors):
        order = [0] * len(colors)
        for x, c in enumerate(colors):
            order[c] = x
        cert = (
            tuple(self.labels[x] for x in order),
            tuple(sorted((lab, colors[u], colors[v]) for u, lab, v in self.arcs)),
        )
        return order, cert


def _individualize(colors, v):
    c = colors[v]
    raw = [2 * x + (1 if (x == c and y != v) else 0) for y, x in enumerate(colors)]
    order = sorted(set(raw))
    rank = {x: i for i, x in enumerate(order)}
    return [rank[x] for x in raw]


def _target_cell(colors):
    cells = {}
    for x, c in enumerate(colors):
        cells.setdefault(c, []).append(x)
    best = None
    for c in sorted(cells):
        cell = cells[c]
        if len(cell) > 1 and (best is None or len(cell) < len(best)):
            best = cell
    return best


def _orbit(seeds, gens, n):
    seen = set(seeds)
    stack = list(seeds)
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


class _Labeling:
    """Canonical labelling search over a :class:`_Digraph`."""

    def __init__(self, g: _Digraph, budget: int):
        self.g = g
        self.budget = budget
        self.steps = 0
        self.first = None
        self.best = None
        self.autos = []
        start = g.refine(list(g.initial))
        self._search(start, [], True)

    def _auto(self, order_a, order_b):
        gamma = [0] * len(order_a)
        for x, y in zip(order_a, order_b):
            gamma[x] = y
        if any(gamma[x] != x for x in range(len(gamma))):
            self.autos.append(gamma)

    def _search(self, colors, prefix, on_first_path) -> bool:
        self.steps += 1
        if self.steps > self.budget:
            raise BudgetExceeded(f"canonical labelling exceeded {self.budget} search nodes")
        colors = self.g.refine(colors)
        cell = _target_cell(colors)
        if cell is None:
            order, cert = self.g.certificate(colors)
            if self.first is None:
                self.first = self.best = (order, cert)
                return False
            if cert == self.first[1]:
                self._auto(self.first[0], order)
                return not on_first_path
            if cert == self.best[1]:
                self._auto(self.best[0], order)
            elif cert < self.best[1]:
                self.best = (order, cert)
            return False
        explored = []
        for idx, v in enumerate(cell):
            if explored:
                gens = [a for a in self.autos if all(a[p] == p for p in prefix)]
                if gens and v in _orbit(explored, gens, len(colors)):
                    continue
            explored.append(v)
            abort = self._search(_individualize(colors, v), prefix + [v], on_first_path and idx == 0)
            if abort and not on_first_path:
                return True
        return False


def _general(m: TopoModel, budget: int | None):
    cache = m.__dict__.setdefault("_canon_cache", {})
    if "general" not in cache:
        g = _Digraph(m)
        lab = _Labeling(g, step_budget(budget))
        cache["general"] = (g, lab.best[0], lab.best[1])
    return cache["general"]


def _smoothed(model: TopoModel) -> TopoModel:
    cache = model.__dict__.setdefault("_canon_cache", {})
    if "smooth" not in cache:
        cache["smooth"] = smooth(model)
    return cache["smooth"]


def canonical_code(model: TopoModel, budget: int | None = None) -> bytes:
    """Certificate equal for two models iff they are isomorphic once smoothed."""
    m = _smoothed(model)
    if _is_forest(m):
        return b"T:" + _forest_code(m).encode()
    _, _, cert = _general(m, budget)
    return b"G:" + json.dumps(cert, separators=(",", ":")).encode()


def is_homeomorphic(m1: TopoModel, m2: TopoModel, budget: int | None = None):
    """(True, witness) when the smoothed decorated models are isomorphic.

    The witness maps vertex and edge ids of ``smooth(m1)`` to those of
    ``smooth(m2)``; limit ends go to limit ends.
    """
    s1, s2 = _smoothed(m1), _smoothed(m2)
    if (len(s1.vertices), len(s1.edges)) != (len(s2.vertices), len(s2.edges)):
        return False, None
    f1, f2 = _is_forest(s1), _is_forest(s2)
    if f1 != f2:
        return False, None
    if f1:
        if _forest_code(s1) != _forest_code(s2):
            return False, None
        return True, _forest_witness(s1, s2)
    g1, order1, cert1 = _general(s1, budget)
    g2, order2, cert2 = _general(s2, budget)
    if cert1 != cert2:
        return False, None
    vertices, edges = {}, {}
    for x, y in zip(order1, order2):
        kind, ref = g1.nodes[x]
        if kind == "v":
            vertices[ref] = g2.nodes[y][1]
        elif kind == "e":
            edges[ref] = g2.nodes[y][1]
    return True, {"vertices": vertices, "edges": edges}


def witness_to_json(witness: dict | None):
    if witness is None:
        return None
    return {
        key: {str(k): v for k, v in sorted(mapping.items())}
        for key, mapping in witness.items()
    }
