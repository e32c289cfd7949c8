"""Builders for the constructions and the decoders that invert them."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .complex import SinePiece, TailPiece, TopoModel, assemble
from .errors import DomainError
from .geometry import (
    THIRD,
    Point,
    branch_segment,
    h_shape,
    trapezoid,
    trunk_segments,
    twig_segment,
    u_shape,
)
from .invariants import component_word, p_spectrum
from .sequences import BitSeqSpec, MSetSpec, word_window

KINDS = ("A", "Y", "X", "C", "QY")


@dataclass(frozen=True)
class SpaceSpec:
    kind: str
    M: MSetSpec | None = None
    g: BitSeqSpec | None = None
    K: int | None = None
    options: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown construction {self.kind!r}")
        if self.kind == "A":
            if self.M is None:
                raise DomainError("A construction needs M")
            if not isinstance(self.M, MSetSpec):
                object.__setattr__(self, "M", MSetSpec.of(self.M))
        else:
            if self.g is None or self.K is None:
                raise DomainError(f"{self.kind} construction needs g and K")
            if isinstance(self.g, dict):
                object.__setattr__(self, "g", BitSeqSpec.from_json(self.g))
            if int(self.K) < 1:
                raise DomainError(f"window half-width K must be >= 1, got {self.K}")
            object.__setattr__(self, "K", int(self.K))

    def to_json(self) -> dict:
        if self.kind == "A":
            out = {"kind": "A", "M": list(self.M.values)}
        else:
            out = {"kind": self.kind, "g": self.g.to_json(), "K": self.K}
        if self.options:
            out["options"] = dict(sorted(self.options.items()))
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SpaceSpec":
        try:
            kind = data["kind"]
            if kind == "A":
                return cls("A", M=MSetSpec.of(data["M"]), options=data.get("options", {}))
            return cls(kind, g=BitSeqSpec.from_json(data["g"]), K=data["K"],
                       options=data.get("options", {}))
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed space spec: {data!r}") from exc

    def with_window(self, K: int) -> "SpaceSpec":
        return SpaceSpec(self.kind, g=self.g, K=K, options=self.options)


def a_pieces(M) -> list:
    M = list(M)
    pieces = list(trunk_segments(Fraction(1, 2**n) for n in M))
    for n in M:
        pieces.append(branch_segment(n))
        pieces.extend(twig_segment(n, k) for k in range(1, n))
    return pieces


def y_pieces(g: BitSeqSpec, K: int, junctions: bool = False) -> list:
    pieces = []
    for k in range(-K, K + 1):
        pieces.extend(h_shape(k) if g(k) == 1 else u_shape(k))
    for k in range(-K, K):
        pieces.append(SinePiece(_sine(k), junctions))
    return pieces


def _sine(k):
    from .geometry import SineArc

    return SineArc(k)


def tail_pieces(K: int) -> list:
    tails = [TailPiece(Point(k - THIRD, 1)) for k in range(-K, K + 1)]
    tails += [TailPiece(k) for k in range(-K, K)]
    return tails


def build(spec: SpaceSpec) -> TopoModel:
    """Assemble the finite window described by ``spec``."""
    prov = spec.to_json()
    if spec.kind == "A":
        return assemble(a_pieces(spec.M), prov)
    g, K = spec.g, spec.K
    if spec.kind == "Y":
        return assemble(y_pieces(g, K), prov)
    if spec.kind == "X":
        return assemble(y_pieces(g, K, True) + tail_pieces(K), prov)
    if spec.kind == "C":
        return assemble(y_pieces(g, K, True) + tail_pieces(K) + trapezoid(), prov)
    return assemble(y_pieces(g, K) + trapezoid(), prov)


def is_tree(model: TopoModel) -> bool:
    if len(model.components) != 1:
        return False
    for e in model.edges.values():
        if e.cls != "arc" or not all(s.is_vertex for s in e.ends):
            return False
    return len(model.edges) == len(model.vertices) - 1


def decode_A(model: TopoModel) -> MSetSpec:
    """Recover M as the deletion-count spectrum minus {1, 2, 3}."""
    if not is_tree(model):
        raise DomainError("decode_A needs a tree")
    return MSetSpec.of(v for v in p_spectrum(model).values if v > 3)


def decode_g(model: TopoModel) -> dict:
    """Window word of g read from the U/H components (U=0, H=1).

    The space has no preferred direction, so the word is only defined up to
    reversal.
    """
    word = component_word(model).a_word
    bits = word.replace("U", "0").replace("H", "1")
    return {"word": bits, "orientation": "up to reversal"}


def same_up_to_reversal(a: str, b: str) -> bool:
    return a == b or a == b[::-1]


def trimming_embeds(M1, M2) -> bool:
    """Whether A[M1] sits in A[M2] by trimming twigs and dropping branches.

    Branch order along the trunk has to be kept, and branch n can only
    host branch m <= n.
    """
    it = iter(sorted(M2))
    for m in sorted(M1):
        for n in it:
            if n >= m:
                break
        else:
            return False
    return True


def theorem_check(kind: str, params: dict, budget: int | None = None) -> dict:
    """Finite-window version of the two theorems' claim structure.

    ``t2`` compares A[M1] and A[M2]; ``t1`` compares Y and C windows of two
    sequences.
    """
    from .homeo import canonical_code, embeds, is_homeomorphic

    kind = kind.lower()
    if kind == "t2":
        M1 = MSetSpec.of(params["M1"])
        M2 = MSetSpec.of(params["M2"])
        a1 = build(SpaceSpec("A", M=M1))
        a2 = build(SpaceSpec("A", M=M2))
        fwd, _ = embeds(a1, a2, budget=budget)
        back, _ = embeds(a2, a1, budget=budget)
        trim_fwd = trimming_embeds(M1, M2)
        trim_back = trimming_embeds(M2, M1)
        homeo = canonical_code(a1) == canonical_code(a2)
        return {
            "kind": "t2",
            "M1": list(M1.values),
            "M2": list(M2.values),
            "decoded": [list(decode_A(a1).values), list(decode_A(a2).values)],
            "homeomorphic": homeo,
            "embeds_forward": fwd,
            "embeds_backward": back,
            "trimming_forward": trim_fwd,
            "trimming_backward": trim_back,
            "ok": (homeo == (M1 == M2)) and (fwd or not trim_fwd) and (back or not trim_back),
        }
    if kind == "t1":
        K = int(params.get("K", 1))
        g1 = _seq_param(params["g1"], K)
        g2 = _seq_param(params["g2"], K)
        w1, w2 = word_window(g1, K), word_window(g2, K)
        expected = same_up_to_reversal(w1, w2)
        y1, y2 = build(SpaceSpec("Y", g=g1, K=K)), build(SpaceSpec("Y", g=g2, K=K))
        y_homeo, _ = is_homeomorphic(y1, y2)
        c1, c2 = build(SpaceSpec("C", g=g1, K=K)), build(SpaceSpec("C", g=g2, K=K))
        c_homeo, _ = is_homeomorphic(c1, c2)
        from .invariants import cutfree_closure_components, find_apex, super_cut_scan

        c_checks = []
        for g, cm in ((g1, c1), (g2, c2)):
            scan = super_cut_scan(SpaceSpec("C", g=g, K=K), K, K + 1)
            apex = find_apex(cm)
            c_checks.append({
                "super_cut_unique": len(scan["super_cut"]) == 1,
                "cutfree_components": len(cutfree_closure_components(cm, apex)),
            })
        # Tails sit on the top-left corner of every U/H, i.e. on the vertical
        # facing the left neighbour, so C windows of reversed words are
        # mirror images but not homeomorphic in general.  Only the direction
        # "homeomorphic implies same word up to reversal" is checked for C.
        c_sound = (not c_homeo or expected) and (w1 != w2 or c_homeo)
        return {
            "kind": "t1",
            "K": K,
            "words": [w1, w2],
            "equal_up_to_reversal": expected,
            "homeomorphic": y_homeo,
            "y_homeomorphic": y_homeo,
            "c_homeomorphic": c_homeo,
            "c_chiral": expected and w1 != w2 and not c_homeo,
            "c_checks": c_checks,
            "ok": y_homeo == expected and c_sound and all(
                c["super_cut_unique"] and c["cutfree_components"] == 1 for c in c_checks
            ),
        }
    raise DomainError(f"unknown theorem {kind!r}; expected t1 or t2")


def _seq_param(value, K):
    if isinstance(value, str):
        return BitSeqSpec.from_window(value, K)
    return BitSeqSpec.from_json(value)
