"""Deterministic SVG rendering of scenes."""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping
from xml.sax.saxutils import escape

from .objects import ConvexPolygon, Disk, Polyline, Segment, Triangle
from .scene import Scene

PALETTE = ("#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac")
SCALE = 20
MARGIN = 10


def _f(q: Fraction) -> str:
    return f"{float(q) * SCALE:.3f}"


def render_svg(s: Scene, annotations: Mapping[int, str] | None = None) -> str:
    """One SVG element per object; ``annotations`` maps an object index to a
    label (e.g. its list or color) drawn at its anchor and used to pick the fill."""
    annotations = annotations or {}
    if s.objects:
        ext = [o.extent() for o in s.objects]
        x0 = min(e[0] for e in ext)
        y0 = min(e[1] for e in ext)
        x1 = max(e[2] for e in ext)
        y1 = max(e[3] for e in ext)
    else:
        x0 = y0 = x1 = y1 = Fraction(0)
    width = float(x1 - x0) * SCALE + 2 * MARGIN
    height = float(y1 - y0) * SCALE + 2 * MARGIN
    labels = sorted(set(annotations.values()))
    color = {lab: PALETTE[i % len(PALETTE)] for i, lab in enumerate(labels)}

    def X(x: Fraction) -> str:
        return f"{float(x - x0) * SCALE + MARGIN:.3f}"

    def Y(y: Fraction) -> str:
        # SVG y grows downwards
        return f"{float(y1 - y) * SCALE + MARGIN:.3f}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.3f}" height="{height:.3f}">',
    ]
    texts = []
    for i, o in enumerate(s.objects):
        fill = color.get(annotations.get(i), "#cccccc")
        common = f'id="o{i}" fill="{fill}" fill-opacity="0.4" stroke="#333333" stroke-width="1"'
        if isinstance(o, Disk):
            out.append(f'<circle {common} cx="{X(o.center.x)}" cy="{Y(o.center.y)}" r="{_f(o.radius)}"/>')
        elif isinstance(o, (Triangle, ConvexPolygon)):
            pts = o.pieces()[0]
            coords = " ".join(f"{X(p.x)},{Y(p.y)}" for p in pts)
            out.append(f'<polygon {common} points="{coords}"/>')
        elif isinstance(o, (Segment, Polyline)):
            pts = [o.p, o.q] if isinstance(o, Segment) else list(o.points)
            coords = " ".join(f"{X(p.x)},{Y(p.y)}" for p in pts)
            out.append(f'<polyline id="o{i}" fill="none" stroke="{fill}" stroke-width="2" points="{coords}"/>')
        if i in annotations and o.anchor is not None:
            texts.append(
                f'<text x="{X(o.anchor.x)}" y="{Y(o.anchor.y)}" font-size="8" text-anchor="middle">'
                f"{escape(annotations[i])}</text>"
            )
    out += texts
    out.append("</svg>")
    return "\n".join(out) + "\n"
