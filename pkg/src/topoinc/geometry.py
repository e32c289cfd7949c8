"""Exact planar primitives and the coordinate formulas of every building block.

All coordinates of the combinatorial layer are :class:`fractions.Fraction`
values.  Floating point only appears in :func:`phi`, :func:`gamma_point` and
:meth:`SineArc.sample`, which exist for rendering.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError

CLOSED = "closed"
HALF_OPEN_A = "half_open_at_a"
HALF_OPEN_B = "half_open_at_b"
SEGMENT_KINDS = (CLOSED, HALF_OPEN_A, HALF_OPEN_B)

PLANE = "plane"
COMPRESSED = "compressed"

THIRD = Fraction(1, 3)


def fmt_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a rational: {text!r}") from exc


@dataclass(frozen=True, order=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def translate(self, dx, dy=0) -> "Point":
        return Point(self.x + dx, self.y + dy)

    def to_json(self) -> dict:
        return {"x": fmt_rational(self.x), "y": fmt_rational(self.y)}

    @classmethod
    def from_json(cls, data: dict) -> "Point":
        return cls(parse_rational(data["x"]), parse_rational(data["y"]))

    def __repr__(self):
        return f"Point({self.x}, {self.y})"


@dataclass(frozen=True)
class Segment:
    """Straight segment from ``a`` to ``b``.

    ``kind`` says which endpoints belong to the point set; ``frame`` tells the
    renderer whether the coordinates still need the arctan compression
    (``"plane"``) or are already compressed (``"compressed"``, used by the
    trapezoid).
    """

    a: Point
    b: Point
    kind: str = CLOSED
    frame: str = PLANE

    def __post_init__(self):
        if self.a == self.b:
            raise DomainError("degenerate segment: a == b")
        if self.kind not in SEGMENT_KINDS:
            raise DomainError(f"unknown segment kind {self.kind!r}")

    @property
    def includes_a(self) -> bool:
        return self.kind != HALF_OPEN_A

    @property
    def includes_b(self) -> bool:
        return self.kind != HALF_OPEN_B

    def translate(self, dx, dy=0) -> "Segment":
        return Segment(self.a.translate(dx, dy), self.b.translate(dx, dy), self.kind, self.frame)

    def contains(self, p: Point, with_ends: bool = True) -> bool:
        """Closed-segment membership test (``with_ends=False`` drops both ends)."""
        if _orient(self.a, self.b, p) != 0:
            return False
        if not _in_box(self.a, self.b, p):
            return False
        if not with_ends and p in (self.a, self.b):
            return False
        return True

    def to_json(self) -> dict:
        return {
            "type": "segment",
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "kind": self.kind,
            "frame": self.frame,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Segment":
        return cls(
            Point.from_json(data["a"]),
            Point.from_json(data["b"]),
            data.get("kind", CLOSED),
            data.get("frame", PLANE),
        )


@dataclass(frozen=True)
class SineArc:
    """Graph of ``y = sin(1/((x-k-1/3)(x-k-2/3)))`` over ``]k+1/3, k+2/3[``.

    Stored symbolically.  Its closure adds the two full verticals at the limit
    abscissae; the model records that through limit attachments.
    """

    k: int
    left_limit_x: Fraction = field(init=False)
    right_limit_x: Fraction = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "left_limit_x", self.k + THIRD)
        object.__setattr__(self, "right_limit_x", self.k + 2 * THIRD)

    @property
    def mid_x(self) -> Fraction:
        return self.k + Fraction(1, 2)

    def argument(self, x: float) -> float:
        return 1.0 / ((x - float(self.left_limit_x)) * (x - float(self.right_limit_x)))

    def sample(self, x: float) -> float:
        lo, hi = float(self.left_limit_x), float(self.right_limit_x)
        if not lo < x < hi:
            raise DomainError(f"x={x} outside the open interval ]{lo}, {hi}[")
        return math.sin(self.argument(x))

    @property
    def mid_argument(self) -> float:
        # the argument is -1/(w/2)^2 at the midpoint, w = 1/3
        half = float(self.right_limit_x - self.left_limit_x) / 2
        return -1.0 / (half * half)

    def x_at_argument(self, t: float, side: str) -> float:
        """Abscissa on ``side`` ("left" or "right") where the argument equals ``t``.

        ``t`` must not exceed :attr:`mid_argument`.
        """
        if t > self.mid_argument:
            raise DomainError(f"argument {t} exceeds the midpoint value {self.mid_argument}")
        half = float(self.right_limit_x - self.left_limit_x) / 2
        disc = max(half * half + 1.0 / t, 0.0)
        root = math.sqrt(disc)
        mid = float(self.mid_x)
        return mid - root if side == "left" else mid + root

    def peak_argument(self) -> float:
        """Largest ``t <= mid_argument`` with ``sin t = 1``."""
        j = math.floor((self.mid_argument - math.pi / 2) / (2 * math.pi))
        return math.pi / 2 + 2 * math.pi * j

    def peak_x(self) -> float:
        # two peaks are equally close to the midpoint; the left one is used
        return self.x_at_argument(self.peak_argument(), "left")

    def to_json(self) -> dict:
        return {"type": "sine_full", "k": self.k}


def _orient(p: Point, q: Point, r: Point) -> Fraction:
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)


def _in_box(a: Point, b: Point, p: Point) -> bool:
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def _sign(q) -> int:
    return (q > 0) - (q < 0)


def intersect(s1: Segment, s2: Segment):
    """Exact intersection of the closed hulls of two segments.

    Returns ``None``, ``("point", P)`` or ``("overlap", P, Q)``.
    """
    a1, b1, a2, b2 = s1.a, s1.b, s2.a, s2.b
    d1 = _sign(_orient(a2, b2, a1))
    d2 = _sign(_orient(a2, b2, b1))
    d3 = _sign(_orient(a1, b1, a2))
    d4 = _sign(_orient(a1, b1, b2))
    if d1 == d2 == d3 == d4 == 0:
        # collinear: project on the dominant axis
        key = (lambda p: (p.x, p.y)) if a1.x != b1.x else (lambda p: (p.y, p.x))
        lo1, hi1 = sorted((a1, b1), key=key)
        lo2, hi2 = sorted((a2, b2), key=key)
        lo = max(lo1, lo2, key=key)
        hi = min(hi1, hi2, key=key)
        if key(lo) > key(hi):
            return None
        if lo == hi:
            return ("point", lo)
        return ("overlap", lo, hi)
    if d1 * d2 < 0 and d3 * d4 < 0:
        num = _orient(a2, b2, a1)
        den = num - _orient(a2, b2, b1)
        t = num / den
        return ("point", Point(a1.x + t * (b1.x - a1.x), a1.y + t * (b1.y - a1.y)))
    for p, s in ((a1, s2), (b1, s2), (a2, s1), (b2, s1)):
        if s.contains(p):
            return ("point", p)
    return None


# --- building blocks -------------------------------------------------------


def branch_segment(n: int) -> Segment:
    """B(n): the half-open vertical from (2^-n, 0) (excluded) to (2^-n, 2^-n)."""
    if n < 4:
        raise DomainError(f"branch index n={n} must be >= 4")
    x = Fraction(1, 2**n)
    return Segment(Point(x, 0), Point(x, x), HALF_OPEN_A)


def twig_segment(n: int, k: int) -> Segment:
    """T(n, k), attached at the top of B(n); valid for 1 <= k <= n-1."""
    if n < 4:
        raise DomainError(f"branch index n={n} must be >= 4")
    if not 1 <= k <= n - 1:
        raise DomainError(f"twig index k={k} outside 1..{n - 1}")
    x = Fraction(1, 2**n)
    tip = Point(x + Fraction(1, 3 ** (n * k)), 2 * x)
    return Segment(Point(x, x), tip, HALF_OPEN_A)


def trunk_segments(feet: Iterable[Fraction]) -> list[Segment]:
    """[0,1] x {0} cut at the given abscissae (plus 0 and 1)."""
    xs = sorted({Fraction(0), Fraction(1), *map(Fraction, feet)})
    return [Segment(Point(a, 0), Point(b, 0)) for a, b in zip(xs, xs[1:])]


def u_shape(k: int) -> list[Segment]:
    left, right = k - THIRD, k + THIRD
    return [
        Segment(Point(left, -1), Point(left, 1)),
        Segment(Point(left, -1), Point(right, -1)),
        Segment(Point(right, -1), Point(right, 1)),
    ]


def h_shape(k: int) -> list[Segment]:
    left, right = k - THIRD, k + THIRD
    return [
        Segment(Point(left, -1), Point(left, 1)),
        Segment(Point(left, 0), Point(right, 0)),
        Segment(Point(right, -1), Point(right, 1)),
    ]


def sine_arc(k: int) -> SineArc:
    return SineArc(k)


def limit_vertical(x) -> Segment:
    """The vertical [(x,-1),(x,1)] onto which a sine end accumulates."""
    return Segment(Point(x, -1), Point(x, 1))


APEX = Point(1, 2)


def trapezoid() -> list[Segment]:
    corners = [Point(-1, -1), Point(1, -2), APEX, Point(-1, 1)]
    return [Segment(p, q, CLOSED, COMPRESSED) for p, q in zip(corners, corners[1:] + corners[:1])]


def phi(p) -> tuple[float, float]:
    """Arctan compression (x, y) -> (2/pi * atan x, y), as floats.

    ``math.atan`` is correctly rounded to within an ulp, so the absolute error
    of the x-coordinate stays far below 1e-12.
    """
    if isinstance(p, Point):
        x, y = p.x, p.y
    else:
        x, y = p
    return (2.0 / math.pi * math.atan(float(x)), float(y))


def gamma_point(component_kind: str, k: int) -> tuple[float, float]:
    """Compressed position of the tail anchor of component ``k``.

    ``"A"`` components use the top-left corner (k-1/3, 1), shared by U_k and
    H_k; ``"S"`` components use the peak of the sine curve nearest to the
    midpoint (left one on ties).
    """
    if component_kind in ("A", "A_component"):
        return phi((k - THIRD, 1))
    if component_kind in ("S", "S_component"):
        return phi((SineArc(k).peak_x(), 1))
    raise DomainError(f"unknown component kind {component_kind!r}")


@dataclass
class IncidenceReport:
    ok: bool
    shared: list[Point]
    crossings: list[dict]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "shared": [p.to_json() for p in self.shared],
            "crossings": [
                {"i": c["i"], "j": c["j"], "point": c["point"].to_json(),
                 **({"until": c["until"].to_json()} if "until" in c else {})}
                for c in self.crossings
            ],
        }


def validate_incidences(segments: Sequence[Segment]) -> IncidenceReport:
    """Check that segments meet only where one of them ends.

    A meeting point must be an endpoint (included or not) of at least one of
    the two segments; proper crossings and collinear overlaps are reported.
    """
    shared: set[Point] = set()
    crossings = []
    boxes = [
        (min(s.a.x, s.b.x), max(s.a.x, s.b.x), min(s.a.y, s.b.y), max(s.a.y, s.b.y))
        for s in segments
    ]
    for i, s1 in enumerate(segments):
        bx1 = boxes[i]
        for j in range(i + 1, len(segments)):
            s2 = segments[j]
            if s1.frame != s2.frame:
                continue
            bx2 = boxes[j]
            if bx1[1] < bx2[0] or bx2[1] < bx1[0] or bx1[3] < bx2[2] or bx2[3] < bx1[2]:
                continue
            hit = intersect(s1, s2)
            if hit is None:
                continue
            if hit[0] == "overlap":
                crossings.append({"i": i, "j": j, "point": hit[1], "until": hit[2]})
                continue
            p = hit[1]
            if p in (s1.a, s1.b, s2.a, s2.b):
                shared.add(p)
            else:
                crossings.append({"i": i, "j": j, "point": p})
    return IncidenceReport(not crossings, sorted(shared), crossings)
