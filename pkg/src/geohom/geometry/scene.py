"""Scenes: object lists, the scene text format, intersection graphs and the unit grid.

The grid has unit cells with integer corners; cell (i, j) is [i, i+1] x [j, j+1].
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..graph import Graph
from .objects import (
    ConvexPolygon,
    Disk,
    GeoObject,
    GeometryError,
    Point,
    Polyline,
    Segment,
    Triangle,
    intersects,
)


class SceneFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Scene:
    objects: tuple[GeoObject, ...] = ()

    def __len__(self) -> int:
        return len(self.objects)

    def subset(self, indices: Sequence[int]) -> "Scene":
        return Scene(tuple(self.objects[i] for i in indices))

    def dumps(self) -> str:
        return "".join(format_object(o) + "\n" for o in self.objects)

    @classmethod
    def loads(cls, text: str) -> "Scene":
        objs = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                objs.append(parse_object(line))
            except (SceneFormatError, GeometryError) as exc:
                raise SceneFormatError(f"line {lineno}: {exc}") from None
        return cls(tuple(objs))


# ---------------------------------------------------------------- text format


def fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _num(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise SceneFormatError(f"bad number {tok!r}") from None


def _anchor_suffix(o: GeoObject) -> list[str]:
    if o.anchor is None:
        return []
    return ["anchor", fmt_q(o.anchor.x), fmt_q(o.anchor.y)]


def format_object(o: GeoObject) -> str:
    if isinstance(o, Disk):
        parts = ["disk", fmt_q(o.center.x), fmt_q(o.center.y), fmt_q(o.radius)]
    elif isinstance(o, Segment):
        parts = ["seg", *(fmt_q(c) for p in (o.p, o.q) for c in p)]
    elif isinstance(o, Triangle):
        parts = ["tri", *(fmt_q(c) for p in (o.a, o.b, o.c) for c in p)]
    elif isinstance(o, ConvexPolygon):
        parts = ["poly", str(len(o.vertices)), *(fmt_q(c) for p in o.vertices for c in p)]
    elif isinstance(o, Polyline):
        parts = ["pline", str(len(o.points)), *(fmt_q(c) for p in o.points for c in p)]
    else:
        raise TypeError(f"unknown object {o!r}")
    return " ".join(parts + _anchor_suffix(o))


def _points(nums: list[Fraction]) -> list[Point]:
    return [Point(nums[i], nums[i + 1]) for i in range(0, len(nums), 2)]


def _split_anchor(toks: list[str], allowed: bool) -> tuple[list[str], Point | None]:
    if "anchor" not in toks:
        return toks, None
    i = toks.index("anchor")
    if not allowed:
        raise SceneFormatError("this object kind takes no anchor")
    if len(toks) != i + 3:
        raise SceneFormatError("anchor needs exactly two coordinates")
    return toks[:i], Point(_num(toks[i + 1]), _num(toks[i + 2]))


def parse_object(line: str) -> GeoObject:
    toks = line.split()
    kind, rest = toks[0], toks[1:]
    if kind in ("disk", "tri", "poly"):
        rest, anchor = _split_anchor(rest, True)
    else:
        rest, anchor = _split_anchor(rest, False)
    if kind == "disk":
        if len(rest) != 3:
            raise SceneFormatError("disk takes x y r")
        x, y, r = map(_num, rest)
        return Disk(Point(x, y), r, anchor=anchor)
    if kind == "seg":
        if len(rest) != 4:
            raise SceneFormatError("seg takes x1 y1 x2 y2")
        p, q = _points([_num(t) for t in rest])
        return Segment(p, q)
    if kind == "tri":
        if len(rest) != 6:
            raise SceneFormatError("tri takes six coordinates")
        a, b, c = _points([_num(t) for t in rest])
        return Triangle(a, b, c, anchor=anchor)
    if kind in ("poly", "pline"):
        if not rest:
            raise SceneFormatError(f"{kind} needs a point count")
        try:
            k = int(rest[0])
        except ValueError:
            raise SceneFormatError("bad point count") from None
        if len(rest) != 1 + 2 * k:
            raise SceneFormatError(f"{kind} declares {k} points")
        pts = tuple(_points([_num(t) for t in rest[1:]]))
        if kind == "poly":
            return ConvexPolygon(pts, anchor=anchor)
        return Polyline(pts)
    raise SceneFormatError(f"unknown object kind {kind!r}")


# ----------------------------------------------------------- graph and grid


def intersection_graph_naive(s: Scene) -> Graph:
    objs = s.objects
    n = len(objs)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if intersects(objs[i], objs[j])]
    return Graph.from_edges(n, edges)


BIG_OBJECT_BUCKETS = 64


def _boxes_meet(e, f) -> bool:
    return e[0] <= f[2] and f[0] <= e[2] and e[1] <= f[3] and f[1] <= e[3]


def intersection_graph(s: Scene) -> Graph:
    """Intersection graph via bucketing on a coarse grid; same output as the
    all-pairs loop."""
    objs = s.objects
    n = len(objs)
    if n < 32:
        return intersection_graph_naive(s)
    ext = [o.extent() for o in objs]
    widths = sorted(max(e[2] - e[0], e[3] - e[1]) for e in ext)
    # bucket side ~ median object size keeps both bucket count and load low
    side = max(Fraction(1), widths[len(widths) // 2])
    buckets: dict[tuple[int, int], list[int]] = defaultdict(list)
    big: list[int] = []
    for i, (x0, y0, x1, y1) in enumerate(ext):
        bx0, bx1 = math.floor(x0 / side), math.floor(x1 / side)
        by0, by1 = math.floor(y0 / side), math.floor(y1 / side)
        if (bx1 - bx0 + 1) * (by1 - by0 + 1) > BIG_OBJECT_BUCKETS:
            big.append(i)
            continue
        for bx in range(bx0, bx1 + 1):
            for by in range(by0, by1 + 1):
                buckets[(bx, by)].append(i)
    pairs: set[tuple[int, int]] = set()
    # objects much larger than the median are paired with everything
    for i in big:
        for j in range(n):
            if j != i and _boxes_meet(ext[i], ext[j]):
                pairs.add((min(i, j), max(i, j)))
    for members in buckets.values():
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                pairs.add((members[a], members[b]))
    edges = [(i, j) for i, j in sorted(pairs) if intersects(objs[i], objs[j])]
    return Graph.from_edges(n, edges)


@dataclass(frozen=True)
class GridRect:
    """Cells col0..col1 x row0..row1 (inclusive)."""

    col0: int
    row0: int
    col1: int
    row1: int

    def __post_init__(self):
        if self.col0 > self.col1 or self.row0 > self.row1:
            raise ValueError("empty grid rectangle")

    @property
    def columns(self) -> int:
        return self.col1 - self.col0 + 1

    @property
    def rows(self) -> int:
        return self.row1 - self.row0 + 1

    @property
    def area(self) -> int:
        return self.columns * self.rows


def _cell_span(lo: Fraction, hi: Fraction) -> tuple[int, int]:
    a = math.floor(lo)
    b = max(a, math.ceil(hi) - 1)
    return a, b


def object_rect(o: GeoObject) -> GridRect:
    x0, y0, x1, y1 = o.extent()
    c0, c1 = _cell_span(x0, x1)
    r0, r1 = _cell_span(y0, y1)
    return GridRect(c0, r0, c1, r1)


def bounding_box(objects: Iterable[GeoObject]) -> GridRect:
    rects = [object_rect(o) for o in objects]
    if not rects:
        raise ValueError("bounding box of an empty object set")
    return GridRect(
        min(r.col0 for r in rects),
        min(r.row0 for r in rects),
        max(r.col1 for r in rects),
        max(r.row1 for r in rects),
    )


def area(objects: Iterable[GeoObject]) -> int:
    return bounding_box(objects).area


@dataclass(frozen=True)
class FatReport:
    ok: bool
    failures: tuple[tuple[int, str], ...]

    def __bool__(self) -> bool:
        return self.ok


def validate_fat_similarly_sized(s: Scene, r_max) -> FatReport:
    """Check every object for an anchor, the inscribed disk about it, and
    containment in the disk of radius ``r_max`` about it."""
    r_max = Fraction(r_max)
    fails = []
    for i, o in enumerate(s.objects):
        if o.anchor is None:
            fails.append((i, "no anchor"))
        elif not o.contains_anchor_disk():
            fails.append((i, "inscribed disk not contained"))
        elif not o.within_radius(o.anchor, r_max):
            fails.append((i, "outside outer radius"))
    return FatReport(not fails, tuple(fails))


def anchor_cell(o: GeoObject) -> tuple[int, int]:
    if o.anchor is None:
        raise ValueError("object has no anchor")
    return math.floor(o.anchor.x), math.floor(o.anchor.y)


def cell_cliques(s: Scene, indices: Iterable[int] | None = None) -> list[list[int]]:
    """Objects grouped by the cell holding their anchor (floor tie-break).

    Parts come in (column, row) order, members in increasing index order.
    """
    idx = range(len(s.objects)) if indices is None else indices
    cells: dict[tuple[int, int], list[int]] = defaultdict(list)
    for i in idx:
        o = s.objects[i]
        if o.anchor is None:
            raise ValueError(f"object {i} has no anchor")
        cells[anchor_cell(o)].append(i)
    return [sorted(cells[c]) for c in sorted(cells)]
