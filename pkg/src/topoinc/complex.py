"""Decorated multigraph model of a planar 1-complex.

A :class:`TopoModel` has vertices (exact points, or symbolic sine peaks) and
edges.  Each edge has two end slots; an end is attached to a vertex, is
*free* (the limit point is not in the space), or is a *limit* end whose
closure is a whole set of target edges (the sine curve accumulating onto a
vertical).  Path connectivity only follows vertex ends; topological
connectivity also follows limit ends.

Models are treated as immutable: every operation returns a new model.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import BuildError, DomainError
from .geometry import (
    APEX,
    CLOSED,
    COMPRESSED,
    HALF_OPEN_A,
    HALF_OPEN_B,
    PLANE,
    Point,
    Segment,
    SineArc,
    fmt_rational,
    limit_vertical,
    parse_rational,
    validate_incidences,
)

SINE_PEAK = "sine_peak"
INTERIOR = "interior"
_FRAME_RANK = {PLANE: 0, SINE_PEAK: 0, INTERIOR: 0, COMPRESSED: 1}


class DisjointSet:
    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def groups(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


# --- curves ----------------------------------------------------------------


@dataclass(frozen=True)
class SineRay:
    """One side of a sine arc, cut at its peak junction."""

    arc: SineArc
    side: str

    def to_json(self):
        return {"type": "sine_ray", "k": self.arc.k, "side": self.side}


@dataclass(frozen=True)
class Tail:
    """Straight tail from a component's anchor towards the apex (1, 2).

    Lives in compressed coordinates, so only the start abscissa (before
    compression) is stored; ``peak`` marks a start on a sine peak.
    """

    start_x: Fraction
    peak: bool = False
    k: int | None = None

    def to_json(self):
        out = {"type": "tail", "start_x": fmt_rational(self.start_x), "peak": self.peak}
        if self.k is not None:
            out["k"] = self.k
        return out


@dataclass(frozen=True)
class Chain:
    """Concatenation left behind when smoothing merges edges."""

    parts: tuple

    def to_json(self):
        return {"type": "chain", "parts": [curve_to_json(c) for c in self.parts]}


def curve_class(curve) -> str:
    if isinstance(curve, (SineArc, SineRay)):
        return "sine"
    return "arc"


def curve_to_json(curve) -> dict:
    return curve.to_json()


def curve_from_json(data: dict):
    kind = data["type"]
    if kind == "segment":
        return Segment.from_json(data)
    if kind == "sine_full":
        return SineArc(int(data["k"]))
    if kind == "sine_ray":
        return SineRay(SineArc(int(data["k"])), data["side"])
    if kind == "tail":
        return Tail(parse_rational(data["start_x"]), bool(data.get("peak", False)), data.get("k"))
    if kind == "chain":
        return Chain(tuple(curve_from_json(p) for p in data["parts"]))
    raise DomainError(f"unknown curve type {kind!r}")


def curve_key(curve) -> tuple:
    """Left-to-right position of a curve, used to order components."""
    if isinstance(curve, Segment):
        return (_FRAME_RANK[curve.frame], min(curve.a.x, curve.b.x))
    if isinstance(curve, SineArc):
        return (0, curve.left_limit_x)
    if isinstance(curve, SineRay):
        return (0, curve.arc.left_limit_x if curve.side == "left" else curve.arc.mid_x)
    if isinstance(curve, Tail):
        return (0, curve.start_x)
    if isinstance(curve, Chain):
        return min(curve_key(p) for p in curve.parts)
    raise TypeError(curve)


# --- model -----------------------------------------------------------------


@dataclass(frozen=True)
class EndSlot:
    kind: str
    vertex: int | None = None
    targets: tuple = ()
    origin: int | None = None

    @classmethod
    def at(cls, v: int) -> "EndSlot":
        return cls("vertex", vertex=v)

    @classmethod
    def free(cls, origin: int | None = None) -> "EndSlot":
        return cls("free", origin=origin)

    @classmethod
    def limit(cls, targets: Iterable[int]) -> "EndSlot":
        return cls("limit", targets=tuple(sorted(set(targets))))

    @property
    def is_vertex(self):
        return self.kind == "vertex"

    def to_json(self):
        if self.kind == "vertex":
            return {"kind": "vertex", "vertex": self.vertex}
        if self.kind == "limit":
            return {"kind": "limit", "targets": list(self.targets)}
        out = {"kind": "free"}
        if self.origin is not None:
            out["origin"] = self.origin
        return out

    @classmethod
    def from_json(cls, data):
        if data["kind"] == "vertex":
            return cls.at(int(data["vertex"]))
        if data["kind"] == "limit":
            return cls.limit(int(t) for t in data["targets"])
        if data["kind"] == "free":
            return cls.free(data.get("origin"))
        raise DomainError(f"unknown end kind {data['kind']!r}")


@dataclass(frozen=True)
class Edge:
    id: int
    ends: tuple
    curve: object

    @property
    def cls(self) -> str:
        return curve_class(self.curve)

    def vertex_ends(self):
        return [s.vertex for s in self.ends if s.is_vertex]

    def to_json(self):
        return {"id": self.id, "ends": [s.to_json() for s in self.ends], "curve": curve_to_json(self.curve)}


@dataclass(frozen=True)
class Vertex:
    id: int
    point: Point | None
    frame: str = PLANE
    k: int | None = None

    @property
    def locus(self) -> tuple:
        """Identity of the underlying point, independent of ids."""
        if self.frame == SINE_PEAK:
            return (SINE_PEAK, self.k)
        if self.frame == INTERIOR:
            return (INTERIOR, self.id)
        return (self.frame, self.point.x, self.point.y)

    def key(self) -> tuple:
        if self.frame == SINE_PEAK:
            return (0, Fraction(self.k) + Fraction(1, 2), Fraction(2))
        if self.frame == INTERIOR:
            return (0, Fraction(0), Fraction(self.id))
        return (_FRAME_RANK[self.frame], self.point.x, self.point.y)

    def to_json(self):
        out = {"id": self.id, "frame": self.frame}
        if self.point is not None:
            out.update(self.point.to_json())
        else:
            out.update({"x": None, "y": None})
        if self.k is not None:
            out["k"] = self.k
        return out

    @classmethod
    def from_json(cls, data):
        point = None if data.get("x") is None else Point.from_json(data)
        return cls(int(data["id"]), point, data.get("frame", PLANE), data.get("k"))


@dataclass(frozen=True)
class PointClass:
    """A vertex, or the interior of an edge (all interior points are alike)."""

    kind: str
    ref: int

    @classmethod
    def vertex(cls, v: int) -> "PointClass":
        return cls("vertex", v)

    @classmethod
    def edge(cls, e: int) -> "PointClass":
        return cls("edge_interior", e)

    def __lt__(self, other):
        return (self.kind != "vertex", self.ref) < (other.kind != "vertex", other.ref)

    def to_json(self):
        return {"kind": self.kind, "ref": self.ref}

    def __str__(self):
        return f"v{self.ref}" if self.kind == "vertex" else f"e{self.ref}"


@dataclass(frozen=True)
class Component:
    index: int
    vertices: frozenset
    edges: frozenset

    def to_json(self):
        return {"index": self.index, "vertices": sorted(self.vertices), "edges": sorted(self.edges)}


@dataclass(frozen=True)
class TopoModel:
    vertices: dict
    edges: dict
    provenance: dict | None = None
    ghosts: dict = field(default_factory=dict)

    def __post_init__(self):
        for e in self.edges.values():
            for s in e.ends:
                if s.is_vertex and s.vertex not in self.vertices:
                    raise BuildError(f"edge {e.id} references missing vertex {s.vertex}")
                if s.kind == "limit":
                    for t in s.targets:
                        if t not in self.edges:
                            raise BuildError(f"edge {e.id} has dangling limit target {t}")

    # incidence ---------------------------------------------------------

    @cached_property
    def incidence(self) -> dict:
        inc = {v: [] for v in self.vertices}
        for eid in sorted(self.edges):
            for i, s in enumerate(self.edges[eid].ends):
                if s.is_vertex:
                    inc[s.vertex].append((eid, i))
        return inc

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    @cached_property
    def targeted_by(self) -> dict:
        """edge id -> sorted tuple of (edge id, end index) limit ends aiming at it."""
        out = {e: [] for e in self.edges}
        for eid in sorted(self.edges):
            for i, s in enumerate(self.edges[eid].ends):
                if s.kind == "limit":
                    for t in s.targets:
                        out[t].append((eid, i))
        return {e: tuple(v) for e, v in out.items()}

    def vertex_by_locus(self) -> dict:
        return {v.locus: v.id for v in self.vertices.values()}

    @property
    def kind(self) -> str | None:
        return None if self.provenance is None else self.provenance.get("kind")

    # connectivity ------------------------------------------------------

    def _partition(self, follow_limits: bool) -> list[Component]:
        ds = DisjointSet([("v", v) for v in self.vertices] + [("e", e) for e in self.edges])
        for e in self.edges.values():
            for s in e.ends:
                if s.is_vertex:
                    ds.union(("e", e.id), ("v", s.vertex))
                elif follow_limits and s.kind == "limit":
                    for t in s.targets:
                        ds.union(("e", e.id), ("e", t))
        comps = []
        for group in ds.groups():
            vs = frozenset(x for tag, x in group if tag == "v")
            es = frozenset(x for tag, x in group if tag == "e")
            comps.append((vs, es))

        def key(item):
            vs, es = item
            keys = [curve_key(self.edges[e].curve) for e in es]
            # subdivision points carry no position and must not move a component
            keys += [self.vertices[v].key()[:2] for v in vs if self.vertices[v].frame != INTERIOR]
            ids = [e for e in es] + [-1 - v for v in vs]
            return (min(keys), min(ids))

        comps.sort(key=key)
        return [Component(i, vs, es) for i, (vs, es) in enumerate(comps)]

    @cached_property
    def components(self) -> list[Component]:
        """Path components, ordered left to right."""
        return self._partition(False)

    @cached_property
    def topological_components(self) -> list[Component]:
        return self._partition(True)

    def component_of(self, p: PointClass) -> Component:
        for c in self.components:
            if (p.kind == "vertex" and p.ref in c.vertices) or (
                p.kind != "vertex" and p.ref in c.edges
            ):
                return c
        raise DomainError(f"point class {p} not in model")

    def point_classes(self, component: Component | None = None) -> list[PointClass]:
        vs = self.vertices if component is None else component.vertices
        es = self.edges if component is None else component.edges
        return [PointClass.vertex(v) for v in sorted(vs)] + [PointClass.edge(e) for e in sorted(es)]

    def __contains__(self, p: PointClass) -> bool:
        return p.ref in (self.vertices if p.kind == "vertex" else self.edges)

    # serialization -----------------------------------------------------

    def to_json(self) -> dict:
        out = {
            "schema": "topoinc/1",
            "vertices": [self.vertices[v].to_json() for v in sorted(self.vertices)],
            "edges": [self.edges[e].to_json() for e in sorted(self.edges)],
            "order": [c.to_json() for c in self.components],
            "provenance": self.provenance,
        }
        if self.ghosts:
            out["ghosts"] = [self.ghosts[v].to_json() for v in sorted(self.ghosts)]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "TopoModel":
        try:
            vertices = {int(v["id"]): Vertex.from_json(v) for v in data["vertices"]}
            edges = {}
            for e in data["edges"]:
                ends = tuple(EndSlot.from_json(s) for s in e["ends"])
                if len(ends) != 2:
                    raise DomainError(f"edge {e['id']} must have two ends")
                edges[int(e["id"])] = Edge(int(e["id"]), ends, curve_from_json(e["curve"]))
            ghosts = {int(v["id"]): Vertex.from_json(v) for v in data.get("ghosts", [])}
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed model JSON: {exc!r}") from exc
        return cls(vertices, edges, data.get("provenance"), ghosts)


def _model(vertices, edges, like: TopoModel, ghosts=None) -> TopoModel:
    return TopoModel(vertices, edges, like.provenance, dict(like.ghosts) if ghosts is None else ghosts)


# --- assembly --------------------------------------------------------------


@dataclass(frozen=True)
class SinePiece:
    """A sine arc to assemble; ``junction`` splits it at its peak."""

    arc: SineArc
    junction: bool = False


@dataclass(frozen=True)
class TailPiece:
    """Half-open tail from an anchor to the (excluded) apex.

    ``start`` is a plane point, or an int ``k`` meaning the peak of S_k.
    """

    start: object


def _locus_of_point(frame, p):
    return (frame, p.x, p.y)


def assemble(pieces: Sequence, provenance: dict | None = None) -> TopoModel:
    """Union of segments, sine arcs and tails as a model.

    Endpoints are snapped into shared vertices.  An excluded endpoint that is
    present elsewhere in the set (as an endpoint or interior point of another
    segment) becomes a vertex; otherwise it is a free end.  Segments are cut
    at every vertex lying in their interior.  Sine limit ends attach to the
    edges that make up the full vertical at the limit abscissa.
    """
    segments = [p for p in pieces if isinstance(p, Segment)]
    sines = [p for p in pieces if isinstance(p, SinePiece)]
    tails = [p for p in pieces if isinstance(p, TailPiece)]
    unknown = [p for p in pieces if not isinstance(p, (Segment, SinePiece, TailPiece))]
    if unknown:
        raise BuildError(f"cannot assemble {unknown[0]!r}")

    report = validate_incidences(segments)
    if not report.ok:
        c = report.crossings[0]
        raise BuildError(f"segments {c['i']} and {c['j']} cross at {c['point']}")

    def present(frame, p, skip):
        for j, s in enumerate(segments):
            if j == skip or s.frame != frame or not s.contains(p):
                continue
            if p == s.a and not s.includes_a:
                continue
            if p == s.b and not s.includes_b:
                continue
            return True
        return False

    loci = {}
    seg_ends = []
    for i, s in enumerate(segments):
        ends = []
        for p, included in ((s.a, s.includes_a), (s.b, s.includes_b)):
            if included or present(s.frame, p, i):
                loci[_locus_of_point(s.frame, p)] = p
                ends.append(True)
            else:
                ends.append(False)
        seg_ends.append(ends)
    for sp in sines:
        if sp.junction:
            loci[(SINE_PEAK, sp.arc.k)] = None
    apex_locus = _locus_of_point(COMPRESSED, APEX)

    def sort_key(locus):
        if locus[0] == SINE_PEAK:
            return (0, Fraction(locus[1]) + Fraction(1, 2), Fraction(2))
        return (_FRAME_RANK[locus[0]], locus[1], locus[2])

    ordered = sorted(loci, key=sort_key)
    vid = {locus: i for i, locus in enumerate(ordered)}
    vertices = {}
    for locus, i in vid.items():
        if locus[0] == SINE_PEAK:
            vertices[i] = Vertex(i, None, SINE_PEAK, locus[1])
        else:
            vertices[i] = Vertex(i, loci[locus], locus[0])

    by_frame = {}
    for locus in loci:
        if locus[0] != SINE_PEAK:
            by_frame.setdefault(locus[0], []).append(loci[locus])

    edges = {}
    sub_segments = []  # (edge id, Segment) for limit lookup

    def add(ends, curve):
        eid = len(edges)
        edges[eid] = Edge(eid, tuple(ends), curve)
        return eid

    for s, (has_a, has_b) in zip(segments, seg_ends):
        inner = [p for p in by_frame.get(s.frame, []) if s.contains(p, with_ends=False)]
        inner.sort(key=lambda p: (p.x - s.a.x) ** 2 + (p.y - s.a.y) ** 2)
        chain = [s.a, *inner, s.b]
        for idx, (p, q) in enumerate(zip(chain, chain[1:])):
            first, last = idx == 0, idx == len(chain) - 2
            ea = EndSlot.at(vid[_locus_of_point(s.frame, p)]) if (not first or has_a) else EndSlot.free()
            eb = EndSlot.at(vid[_locus_of_point(s.frame, q)]) if (not last or has_b) else EndSlot.free()
            kind = "closed"
            if first and not has_a:
                kind = "half_open_at_a"
            elif last and not has_b:
                kind = "half_open_at_b"
            piece = Segment(p, q, kind, s.frame)
            eid = add((ea, eb), piece)
            sub_segments.append((eid, piece))

    def limit_targets(x):
        vertical = limit_vertical(x)
        hits = [
            (eid, seg) for eid, seg in sub_segments
            if seg.frame == PLANE and vertical.contains(seg.a) and vertical.contains(seg.b)
        ]
        ys = sorted((min(s.a.y, s.b.y), max(s.a.y, s.b.y)) for _, s in hits)
        reach = Fraction(-1)
        for lo, hi in ys:
            if lo > reach:
                break
            reach = max(reach, hi)
        if not hits or ys[0][0] != -1 or reach != 1:
            raise BuildError(f"dangling limit target: vertical x={x} not fully present")
        return [eid for eid, _ in hits]

    for sp in sines:
        left = EndSlot.limit(limit_targets(sp.arc.left_limit_x))
        right = EndSlot.limit(limit_targets(sp.arc.right_limit_x))
        if sp.junction:
            peak = EndSlot.at(vid[(SINE_PEAK, sp.arc.k)])
            add((left, peak), SineRay(sp.arc, "left"))
            add((peak, right), SineRay(sp.arc, "right"))
        else:
            add((left, right), sp.arc)

    for tp in tails:
        if isinstance(tp.start, Point):
            locus = _locus_of_point(PLANE, tp.start)
            curve = Tail(tp.start.x)
        else:
            locus = (SINE_PEAK, int(tp.start))
            curve = Tail(Fraction(int(tp.start)) + Fraction(1, 2), True, int(tp.start))
        if locus not in vid:
            raise BuildError(f"tail anchor {locus} is not a point of the model")
        far = EndSlot.at(vid[apex_locus]) if apex_locus in vid else EndSlot.free()
        add((EndSlot.at(vid[locus]), far), curve)

    return TopoModel(vertices, edges, provenance)


# --- mutation --------------------------------------------------------------


def delete(model: TopoModel, p: PointClass) -> TopoModel:
    """Remove one point (a vertex, or an interior point of an edge)."""
    if p not in model:
        raise DomainError(f"point class {p} not in model")
    edges = dict(model.edges)
    if p.kind == "vertex":
        v = p.ref
        for eid, _ in model.incidence[v]:
            e = edges[eid]
            ends = tuple(EndSlot.free(origin=v) if (s.is_vertex and s.vertex == v) else s for s in e.ends)
            edges[eid] = Edge(eid, ends, e.curve)
        vertices = {k: x for k, x in model.vertices.items() if k != v}
        ghosts = dict(model.ghosts)
        ghosts[v] = model.vertices[v]
        return _model(vertices, edges, model, ghosts)

    e = edges[p.ref]
    new_id = max(edges) + 1
    edges[e.id] = Edge(e.id, (e.ends[0], EndSlot.free()), e.curve)
    edges[new_id] = Edge(new_id, (EndSlot.free(), e.ends[1]), e.curve)
    for eid, other in list(edges.items()):
        if any(s.kind == "limit" and e.id in s.targets for s in other.ends):
            ends = tuple(
                EndSlot.limit(s.targets + (new_id,)) if (s.kind == "limit" and e.id in s.targets) else s
                for s in other.ends
            )
            edges[eid] = Edge(eid, ends, other.curve)
    return _model(dict(model.vertices), edges, model)


def subdivide(model: TopoModel, eid: int, t: Fraction = Fraction(1, 2)) -> tuple[TopoModel, int]:
    """Insert a degree-2 vertex inside edge ``eid``; returns (model, vertex id).

    Segment edges get the exact point at parameter ``t``; other curves get a
    symbolic vertex.
    """
    e = model.edges[eid]
    vid_new = max(list(model.vertices) + list(model.ghosts) + [-1]) + 1
    if isinstance(e.curve, Segment):
        s = e.curve
        pt = Point(s.a.x + t * (s.b.x - s.a.x), s.a.y + t * (s.b.y - s.a.y))
        vertex = Vertex(vid_new, pt, s.frame)
    else:
        vertex = Vertex(vid_new, None, INTERIOR)
    vertices = dict(model.vertices)
    vertices[vid_new] = vertex
    first = second = e.curve
    if isinstance(e.curve, Segment):
        first = Segment(s.a, pt, HALF_OPEN_A if s.kind == HALF_OPEN_A else CLOSED, s.frame)
        second = Segment(pt, s.b, HALF_OPEN_B if s.kind == HALF_OPEN_B else CLOSED, s.frame)
    edges = dict(model.edges)
    new_eid = max(edges) + 1
    edges[eid] = Edge(eid, (e.ends[0], EndSlot.at(vid_new)), first)
    edges[new_eid] = Edge(new_eid, (EndSlot.at(vid_new), e.ends[1]), second)
    for oid, other in list(edges.items()):
        if any(s.kind == "limit" and eid in s.targets for s in other.ends):
            ends = tuple(
                EndSlot.limit(s.targets + (new_eid,)) if (s.kind == "limit" and eid in s.targets) else s
                for s in other.ends
            )
            edges[oid] = Edge(oid, ends, other.curve)
    return _model(vertices, edges, model), vid_new


def smooth(model: TopoModel) -> TopoModel:
    """Merge arc edges through degree-2 vertices, to a fixpoint.

    A vertex is kept when its two edges are the same (the base vertex of a
    cycle), when either edge is a sine edge, or when the two edges are
    targeted by different limit ends (the vertex bounds a limit set).
    """
    vertices = dict(model.vertices)
    edges = dict(model.edges)
    while True:
        current = TopoModel(vertices, edges, model.provenance)
        inc, targeted = current.incidence, current.targeted_by
        merged = False
        for v in sorted(vertices):
            ends = inc[v]
            if len(ends) != 2:
                continue
            (e1, i1), (e2, i2) = ends
            if e1 == e2:
                continue
            E1, E2 = edges[e1], edges[e2]
            if E1.cls != "arc" or E2.cls != "arc" or targeted[e1] != targeted[e2]:
                continue
            keep, drop = min(e1, e2), max(e1, e2)
            far1, far2 = E1.ends[1 - i1], E2.ends[1 - i2]
            parts = []
            for c in (E1.curve, E2.curve):
                parts.extend(c.parts if isinstance(c, Chain) else (c,))
            edges[keep] = Edge(keep, (far1, far2), Chain(tuple(parts)))
            del edges[drop]
            del vertices[v]
            for oid, other in list(edges.items()):
                if any(s.kind == "limit" and drop in s.targets for s in other.ends):
                    new_ends = tuple(
                        EndSlot.limit([keep if t == drop else t for t in s.targets])
                        if s.kind == "limit" else s
                        for s in other.ends
                    )
                    edges[oid] = Edge(oid, new_ends, other.curve)
            merged = True
            break
        if not merged:
            return _model(vertices, edges, model)


def restrict(model: TopoModel, vertices: Iterable[int], edges: Iterable[int]) -> TopoModel:
    """Sub-model on the given elements; limit targets outside it are dropped."""
    vs = set(vertices)
    es = set(edges)
    new_edges = {}
    for eid in es:
        e = model.edges[eid]
        ends = tuple(
            EndSlot.limit(t for t in s.targets if t in es) if s.kind == "limit" else s
            for s in e.ends
        )
        new_edges[eid] = Edge(eid, ends, e.curve)
    return _model({v: model.vertices[v] for v in vs}, new_edges, model)


def reattach_closure(model: TopoModel, component, at: int) -> TopoModel:
    """Closure of path component(s) at a previously deleted vertex ``at``.

    ``component`` is a component index (in ``model.components`` order) or an
    iterable of indices.  Free ends created by deleting ``at`` are reattached
    to a restored copy of that vertex.
    """
    indices = [component] if isinstance(component, int) else list(component)
    comps = model.components
    vs, es = set(), set()
    for i in indices:
        if not 0 <= i < len(comps):
            raise DomainError(f"no component {i}")
        vs |= comps[i].vertices
        es |= comps[i].edges
    stubs = [
        eid for eid in es
        if any(s.kind == "free" and s.origin == at for s in model.edges[eid].ends)
    ]
    if not stubs or at not in model.ghosts:
        raise DomainError(f"component(s) {indices} have no stub at deleted vertex {at}")
    sub = restrict(model, vs, es)
    vertices = dict(sub.vertices)
    vertices[at] = model.ghosts[at]
    edges = {}
    for eid, e in sub.edges.items():
        ends = tuple(EndSlot.at(at) if (s.kind == "free" and s.origin == at) else s for s in e.ends)
        edges[eid] = Edge(eid, ends, e.curve)
    ghosts = {k: v for k, v in model.ghosts.items() if k != at}
    return _model(vertices, edges, model, ghosts)


def relabel(model: TopoModel, vmap: dict, emap: dict) -> TopoModel:
    """Rename vertex and edge ids (used to test id-independence)."""

    def end(s):
        if s.is_vertex:
            return EndSlot.at(vmap[s.vertex])
        if s.kind == "limit":
            return EndSlot.limit(emap[t] for t in s.targets)
        return EndSlot.free(None if s.origin is None else vmap.get(s.origin, s.origin))

    vertices = {
        vmap[v]: Vertex(vmap[v], x.point, x.frame, x.k) for v, x in model.vertices.items()
    }
    edges = {emap[e]: Edge(emap[e], tuple(end(s) for s in x.ends), x.curve) for e, x in model.edges.items()}
    return TopoModel(vertices, edges, model.provenance)
