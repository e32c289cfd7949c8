"""Deterministic SVG output for models.

Coordinates are written in model units with 12 decimals; a ``scale(1,-1)``
group flips the y axis.  Sine curves are drawn only partway toward their
limit verticals; the SVG metadata says so.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from xml.sax.saxutils import escape

from .complex import Chain, SineRay, Tail, TopoModel
from .errors import DomainError
from .geometry import APEX, COMPRESSED, Segment, SineArc, phi

TRUNCATION_NOTE = (
    "sine curves are truncated: each side shows at most `cap` half-oscillations "
    "from the midpoint; the true curves oscillate infinitely often toward their limit verticals"
)


@dataclass(frozen=True)
class RenderOptions:
    cap: int = 40  # half-oscillations drawn on each side of a sine midpoint
    samples_per_period: int = 24
    stroke_width: float = 0.01
    viewport: tuple | None = None  # (xmin, ymin, xmax, ymax) in drawing coordinates
    compress: bool = True  # apply phi to plane geometry; needed for Q and tails

    def __post_init__(self):
        if int(self.cap) < 1:
            raise DomainError(f"cap must be >= 1, got {self.cap}")
        if int(self.samples_per_period) < 2:
            raise DomainError(f"samples_per_period must be >= 2, got {self.samples_per_period}")
        if self.stroke_width <= 0:
            raise DomainError("stroke_width must be positive")
        if self.viewport is not None:
            x0, y0, x1, y1 = self.viewport
            if not (x0 < x1 and y0 < y1):
                raise DomainError(f"empty viewport {self.viewport}")

    def to_json(self) -> dict:
        out = asdict(self)
        out["viewport"] = None if self.viewport is None else list(self.viewport)
        return out


def _num(v) -> str:
    text = f"{float(v):.12f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _sine_args(arc: SineArc, opts: RenderOptions) -> list:
    """Arguments from the midpoint outward, ``cap`` half-oscillations deep."""
    per_half = max(opts.samples_per_period // 2, 1)
    t0 = arc.mid_argument
    return [t0 - math.pi * i / per_half for i in range(opts.cap * per_half + 1)]


def _at(arc: SineArc, ts, side: str) -> list:
    return [(arc.x_at_argument(t, side), math.sin(t)) for t in ts]


class _Drawer:
    def __init__(self, opts: RenderOptions):
        self.opts = opts
        self.paths = []
        self.omitted = set()

    def plane(self, pts):
        if self.opts.compress:
            return [phi(p) for p in pts]
        return [(float(x), float(y)) for x, y in pts]

    def curve(self, eid, curve):
        if isinstance(curve, Chain):
            for part in curve.parts:
                self.curve(eid, part)
        elif isinstance(curve, Segment):
            self.segment(eid, curve)
        elif isinstance(curve, SineArc):
            ts = _sine_args(curve, self.opts)
            pts = _at(curve, ts[::-1], "left") + _at(curve, ts[1:], "right")
            self.emit(eid, "sine", self.plane(pts))
        elif isinstance(curve, SineRay):
            # the two rays meet at the left peak next to the midpoint
            arc = curve.arc
            ts = _sine_args(arc, self.opts)
            tp = arc.peak_argument()
            if curve.side == "left":
                pts = _at(arc, [t for t in ts if t < tp][::-1] + [tp], "left")
            else:
                pts = _at(arc, [tp] + [t for t in ts if t > tp][::-1], "left")
                pts += _at(arc, ts[1:], "right")
            self.emit(eid, "sine", self.plane(pts))
        elif isinstance(curve, Tail):
            if not self.opts.compress:
                self.omitted.add("tails")
                return
            if curve.peak:
                start = phi((SineArc(curve.k).peak_x(), 1))
            else:
                start = phi((curve.start_x, 1))
            self.emit(eid, "tail", [start, (float(APEX.x), float(APEX.y))])
        else:
            raise DomainError(f"cannot draw {curve!r}")

    def segment(self, eid, s: Segment):
        if s.frame == COMPRESSED:
            if not self.opts.compress:
                self.omitted.add("Q")
                return
            self.emit(eid, "segment", [(float(s.a.x), float(s.a.y)), (float(s.b.x), float(s.b.y))])
            return
        if self.opts.compress and s.a.x != s.b.x and s.a.y != s.b.y:
            # phi bends slanted segments; sample them
            n = 16
            pts = [(s.a.x + (s.b.x - s.a.x) * Fraction(i, n), s.a.y + (s.b.y - s.a.y) * Fraction(i, n))
                   for i in range(n + 1)]
        else:
            pts = [(s.a.x, s.a.y), (s.b.x, s.b.y)]
        self.emit(eid, "segment", self.plane(pts))

    def emit(self, eid, cls, pts):
        self.paths.append((eid, cls, pts))


def _bbox(paths):
    xs = [x for _, _, pts in paths for x, _ in pts]
    ys = [y for _, _, pts in paths for _, y in pts]
    if not xs:
        return (-1.0, -1.0, 1.0, 1.0)
    return (min(xs), min(ys), max(xs), max(ys))


def to_svg(model: TopoModel, opts: RenderOptions | None = None) -> str:
    opts = opts or RenderOptions()
    d = _Drawer(opts)
    for eid in sorted(model.edges):
        d.curve(eid, model.edges[eid].curve)
    if opts.viewport is not None:
        x0, y0, x1, y1 = (float(v) for v in opts.viewport)
    else:
        x0, y0, x1, y1 = _bbox(d.paths)
        pad = 0.05 * max(x1 - x0, y1 - y0, 1.0)
        x0, y0, x1, y1 = x0 - pad, y0 - pad, x1 + pad, y1 + pad
    meta = {
        "schema": "topoinc/1",
        "space": model.provenance,
        "options": opts.to_json(),
        "truncation": TRUNCATION_NOTE,
        "omitted": sorted(d.omitted),
    }
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_num(x0)} {_num(-y1)} {_num(x1 - x0)} {_num(y1 - y0)}">',
        "<metadata>" + escape(json.dumps(meta, sort_keys=True)) + "</metadata>",
        f'<g transform="scale(1,-1)" fill="none" stroke="black" '
        f'stroke-width="{_num(opts.stroke_width)}" stroke-linecap="round">',
    ]
    for eid, cls, pts in d.paths:
        data = "M" + " L".join(f"{_num(x)},{_num(y)}" for x, y in pts)
        lines.append(f'<path class="{cls}" data-edge="{eid}" d="{data}"/>')
    lines += ["</g>", "</svg>", ""]
    return "\n".join(lines)
