"""Homeomorphism invariants: components, deletion counts, cut-point analysis."""
from __future__ import annotations

from dataclasses import dataclass

from .complex import Component, PointClass, TopoModel, delete, reattach_closure, smooth
from .errors import DomainError

SEQUENCE_KINDS = ("Y", "X", "C", "QY")


def path_components(model: TopoModel) -> list[Component]:
    return model.components


def topological_components(model: TopoModel) -> list[Component]:
    return model.topological_components


def _count_within(model: TopoModel, vertices, edges) -> int:
    """Path components of ``model`` that meet the given elements."""
    seen = 0
    for c in model.components:
        if c.vertices & vertices or c.edges & edges:
            seen += 1
    return seen


def deletion_count(model: TopoModel, p: PointClass, scope: str = "component") -> int:
    """Number of path components left after removing ``p``.

    With ``scope="component"`` only the pieces of p's own component count;
    ``scope="global"`` counts every component of the punctured model.
    """
    comp = model.component_of(p)
    after = delete(model, p)
    if scope == "global":
        return len(after.components)
    vertices = comp.vertices - {p.ref} if p.kind == "vertex" else comp.vertices
    edges = set(comp.edges)
    if p.kind != "vertex":
        edges.add(max(after.edges))  # the second half of the cut edge
    return _count_within(after, vertices, edges)


@dataclass
class SpectrumReport:
    counts: dict

    @property
    def values(self) -> list[int]:
        return sorted(set(self.counts.values()))

    def to_json(self) -> dict:
        return {
            "values": self.values,
            "counts": [
                {"point": p.to_json(), "count": self.counts[p]} for p in sorted(self.counts)
            ],
        }


def p_spectrum(model: TopoModel) -> SpectrumReport:
    return SpectrumReport({p: deletion_count(model, p) for p in model.point_classes()})


def _check_component(model: TopoModel, component) -> Component:
    if isinstance(component, int):
        return model.components[component]
    if component not in model.components:
        raise DomainError("component is not a path component of this model")
    return component


def noncut_points(model: TopoModel, component) -> set[PointClass]:
    """Points whose removal leaves the component path-connected.

    Edge interiors are scanned too; they only qualify on cycles.
    """
    comp = _check_component(model, component)
    return {p for p in model.point_classes(comp) if deletion_count(model, p) <= 1}


def cut_points(model: TopoModel, component) -> set[PointClass]:
    comp = _check_component(model, component)
    return {p for p in model.point_classes(comp) if deletion_count(model, p) >= 2}


def triple_points(model: TopoModel, component) -> set[PointClass]:
    comp = _check_component(model, component)
    return {p for p in model.point_classes(comp) if deletion_count(model, p) == 3}


def super_cut_scan(spec, K1: int, K2: int) -> dict:
    """Vertices whose deletion count grows from window K1 to window K2.

    Growth across windows stands in for "infinitely many components".
    """
    from .spaces import SpaceSpec, build

    if spec.kind != "C":
        raise DomainError(f"super_cut_scan needs a C construction, got {spec.kind}")
    if not K1 < K2:
        raise DomainError(f"window pair must be strict: K1={K1}, K2={K2}")
    m1 = build(SpaceSpec(spec.kind, g=spec.g, K=K1))
    m2 = build(SpaceSpec(spec.kind, g=spec.g, K=K2))
    loc2 = m2.vertex_by_locus()
    counts = {}
    grows = []
    for v in sorted(m1.vertices):
        locus = m1.vertices[v].locus
        if locus not in loc2:
            continue
        c1 = deletion_count(m1, PointClass.vertex(v))
        c2 = deletion_count(m2, PointClass.vertex(loc2[locus]))
        counts[locus] = (c1, c2)
        if c2 > c1:
            grows.append(locus)
    return {"super_cut": grows, "counts": counts}


def locus_to_json(locus) -> dict:
    from .geometry import fmt_rational

    if len(locus) == 2:
        return {"frame": locus[0], "k": locus[1]}
    return {"frame": locus[0], "x": fmt_rational(locus[1]), "y": fmt_rational(locus[2])}


def is_cycle(model: TopoModel, comp: Component) -> bool:
    """Whether the component is a simple closed curve."""
    if any(model.edges[e].cls != "arc" for e in comp.edges):
        return False
    if any(s.kind != "vertex" for e in comp.edges for s in model.edges[e].ends):
        return False
    return len(comp.edges) == len(comp.vertices) and all(
        model.degree(v) == 2 for v in comp.vertices
    )


def classify_component(model: TopoModel, comp: Component) -> str:
    """U, H, S (or Q for a cycle) from intrinsic invariants only.

    S components carry sine content.  Otherwise the pair (noncut count,
    triple count) decides: (2, 0) or (1, 0) is U, (4, 2) or (3, 2) is H;
    the second value in each pair is the variant with a tail attached.
    """
    if any(model.edges[e].cls == "sine" for e in comp.edges):
        return "S"
    if is_cycle(model, comp):
        return "Q"
    counts = [deletion_count(model, p) for p in model.point_classes(comp)]
    noncut = sum(1 for c in counts if c <= 1)
    triple = sum(1 for c in counts if c == 3)
    if triple == 2 and noncut in (3, 4):
        return "H"
    if triple == 0 and noncut in (1, 2):
        return "U"
    raise DomainError(
        f"cannot classify component {comp.index} (noncut={noncut}, triple={triple})"
    )


@dataclass(frozen=True)
class ComponentWord:
    symbols: tuple
    components: tuple

    @property
    def text(self) -> str:
        return "".join(self.symbols)

    @property
    def a_word(self) -> str:
        return "".join(s for s in self.symbols if s in "UH")

    def to_json(self) -> dict:
        return {"word": self.text, "components": list(self.components)}


def find_apex(model: TopoModel) -> int:
    """The vertex with the largest deletion count (unique in a C window)."""
    best = None
    tie = False
    for v in sorted(model.vertices):
        c = deletion_count(model, PointClass.vertex(v))
        if best is None or c > best[0]:
            best, tie = (c, v), False
        elif c == best[0]:
            tie = True
    if best is None or tie:
        raise DomainError("no unique vertex of maximal deletion count")
    return best[1]


def cutfree_closure_components(model: TopoModel, apex: int) -> list[int]:
    """Components of ``model - apex`` whose closure has no cut points.

    Indices refer to ``delete(model, apex).components``.
    """
    if apex not in model.vertices:
        raise DomainError(f"apex {apex} is not a vertex of the model")
    punctured = delete(model, PointClass.vertex(apex))
    found = []
    for comp in punctured.components:
        try:
            closure = reattach_closure(punctured, comp.index, apex)
        except DomainError:
            continue
        whole = closure.components
        if len(whole) != 1:
            continue
        if not cut_points(closure, whole[0]):
            found.append(comp.index)
    return found


def x_part(model: TopoModel) -> tuple[TopoModel, list[Component]]:
    """The components carrying the sequence, with the compactifying part removed.

    C windows lose their apex and the cut-point-free Q remnant; QY windows
    lose their cycle.  Y and X windows are returned as they are.
    """
    kind = model.kind
    if kind not in SEQUENCE_KINDS:
        raise DomainError(f"model provenance {kind!r} is not a sequence construction")
    if kind == "C":
        apex = find_apex(model)
        q = set(cutfree_closure_components(model, apex))
        punctured = delete(model, PointClass.vertex(apex))
        return punctured, [c for c in punctured.components if c.index not in q]
    comps = [c for c in model.components if not (kind == "QY" and is_cycle(model, c))]
    return model, comps


def component_word(model: TopoModel) -> ComponentWord:
    base, comps = x_part(model)
    symbols = tuple(classify_component(base, c) for c in comps)
    return ComponentWord(symbols, tuple(c.index for c in comps))


def smoothed_classification(model: TopoModel) -> list[str]:
    """Classification after smoothing, to check invariance."""
    m = smooth(model)
    return [classify_component(m, c) for c in m.components]
