"""Exact geometric objects and closed-set intersection predicates.

Coordinates are Fractions.  Every comparison is done on squared quantities,
so no square roots are ever taken.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import NamedTuple, Sequence

HALF = Fraction(1, 2)  # squared radius of the disk every anchored object must contain


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(Fraction(x), Fraction(y))

    def __add__(self, o: "Point") -> "Point":  # type: ignore[override]
        return Point(self.x + o.x, self.y + o.y)

    def __sub__(self, o: "Point") -> "Point":  # type: ignore[override]
        return Point(self.x - o.x, self.y - o.y)


def cross(a: Point, b: Point) -> Fraction:
    return a.x * b.y - a.y * b.x


def dot(a: Point, b: Point) -> Fraction:
    return a.x * b.x + a.y * b.y


def orient(p: Point, q: Point, r: Point) -> Fraction:
    return cross(q - p, r - p)


def dist2(a: Point, b: Point) -> Fraction:
    d = a - b
    return dot(d, d)


def point_segment_dist2(p: Point, a: Point, b: Point) -> Fraction:
    ab = b - a
    L = dot(ab, ab)
    if L == 0:
        return dist2(p, a)
    t = dot(p - a, ab) / L
    if t <= 0:
        return dist2(p, a)
    if t >= 1:
        return dist2(p, b)
    proj = Point(a.x + t * ab.x, a.y + t * ab.y)
    return dist2(p, proj)


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class GeoObject:
    anchor: Point | None = field(default=None, kw_only=True)

    kind = "object"

    def pieces(self) -> list[tuple[Point, ...]]:
        """Convex pieces (vertex tuples) whose union is the object."""
        raise NotImplementedError

    def extent(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """(min x, min y, max x, max y) of the object."""
        return self._extent

    # cached outside the dataclass fields, so equality and hashing ignore it
    @cached_property
    def _extent(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        pts = [p for piece in self.pieces() for p in piece]
        return (
            min(p.x for p in pts),
            min(p.y for p in pts),
            max(p.x for p in pts),
            max(p.y for p in pts),
        )

    def contains_anchor_disk(self) -> bool:
        return False

    def within_radius(self, center: Point, R: Fraction) -> bool:
        R2 = Fraction(R) ** 2
        return all(dist2(p, center) <= R2 for piece in self.pieces() for p in piece)


@dataclass(frozen=True)
class Disk(GeoObject):
    center: Point
    radius: Fraction

    kind = "disk"

    def __post_init__(self):
        object.__setattr__(self, "radius", Fraction(self.radius))
        if self.radius <= 0:
            raise GeometryError("disk radius must be positive")

    def extent(self):
        c, r = self.center, self.radius
        return (c.x - r, c.y - r, c.x + r, c.y + r)

    def contains_anchor_disk(self) -> bool:
        # |a - c| + sqrt(1/2) <= r, squared twice
        if self.anchor is None:
            return False
        r2 = self.radius**2
        if r2 < HALF:
            return False
        lhs = r2 + HALF - dist2(self.anchor, self.center)
        return lhs >= 0 and 2 * r2 <= lhs * lhs

    def within_radius(self, center: Point, R: Fraction) -> bool:
        slack = Fraction(R) - self.radius
        return slack >= 0 and dist2(self.center, center) <= slack * slack


@dataclass(frozen=True)
class Segment(GeoObject):
    p: Point
    q: Point

    kind = "seg"

    def __post_init__(self):
        if self.p == self.q:
            raise GeometryError("segment endpoints must differ")

    def pieces(self):
        return [(self.p, self.q)]


def _check_convex_ccw(pts: Sequence[Point]) -> None:
    k = len(pts)
    if k < 3:
        raise GeometryError("polygon needs at least 3 vertices")
    for i in range(k):
        if orient(pts[i], pts[(i + 1) % k], pts[(i + 2) % k]) <= 0:
            raise GeometryError("polygon must be strictly convex and counter-clockwise")
    # left turns alone admit star polygons; a CCW fan from the first vertex
    # pins the winding number to one
    for i in range(1, k - 1):
        if orient(pts[0], pts[i], pts[i + 1]) <= 0:
            raise GeometryError("polygon must be simple")


def _inscribed_ok(pts: Sequence[Point], a: Point) -> bool:
    k = len(pts)
    for i in range(k):
        e = pts[(i + 1) % k] - pts[i]
        c = cross(e, a - pts[i])
        if c < 0 or c * c < dot(e, e) * HALF:
            return False
    return True


@dataclass(frozen=True)
class Triangle(GeoObject):
    a: Point
    b: Point
    c: Point

    kind = "tri"

    def __post_init__(self):
        if orient(self.a, self.b, self.c) == 0:
            raise GeometryError("triangle vertices are collinear")

    @cached_property
    def ccw(self) -> tuple[Point, Point, Point]:
        if orient(self.a, self.b, self.c) > 0:
            return (self.a, self.b, self.c)
        return (self.a, self.c, self.b)

    def pieces(self):
        return [self.ccw]

    def contains_anchor_disk(self) -> bool:
        return self.anchor is not None and _inscribed_ok(self.ccw, self.anchor)


@dataclass(frozen=True)
class ConvexPolygon(GeoObject):
    vertices: tuple[Point, ...]

    kind = "poly"

    def __post_init__(self):
        _check_convex_ccw(self.vertices)

    def pieces(self):
        return [tuple(self.vertices)]

    def contains_anchor_disk(self) -> bool:
        return self.anchor is not None and _inscribed_ok(self.vertices, self.anchor)


@dataclass(frozen=True)
class Polyline(GeoObject):
    points: tuple[Point, ...]

    kind = "pline"

    def __post_init__(self):
        if len(self.points) < 2:
            raise GeometryError("polyline needs at least 2 points")
        if any(p == q for p, q in zip(self.points, self.points[1:])):
            raise GeometryError("consecutive polyline points must differ")

    def pieces(self):
        return [(p, q) for p, q in zip(self.points, self.points[1:])]


# ------------------------------------------------------------------ predicates


def _axes(piece: Sequence[Point]) -> list[Point]:
    out = []
    k = len(piece)
    for i in range(k if k > 2 else 1):
        e = piece[(i + 1) % k] - piece[i]
        out.append(Point(-e.y, e.x))
        if k == 2:
            out.append(e)
    return out


def _separated(p: Sequence[Point], q: Sequence[Point]) -> bool:
    # float filter first; only axes within the error bound are tested exactly
    fp = [(float(v.x), float(v.y)) for v in p]
    fq = [(float(v.x), float(v.y)) for v in q]
    big = max(max(abs(x), abs(y)) for x, y in fp + fq)
    eps = 1e-9 * (1.0 + big) ** 2
    unsure = []
    for ax in _axes(p) + _axes(q):
        ux, uy = float(ax.x), float(ax.y)
        pp = [ux * x + uy * y for x, y in fp]
        qq = [ux * x + uy * y for x, y in fq]
        gap = max(min(qq) - max(pp), min(pp) - max(qq))
        if gap > eps:
            return True
        if gap >= -eps:
            unsure.append(ax)
    for ax in unsure:
        pp = [dot(ax, v) for v in p]
        qq = [dot(ax, v) for v in q]
        if max(pp) < min(qq) or max(qq) < min(pp):
            return True
    return False


def convex_intersect(p: Sequence[Point], q: Sequence[Point]) -> bool:
    """Closed convex hulls of two vertex tuples meet (segments allowed)."""
    return not _separated(p, q)


def _point_in_convex(pt: Point, piece: Sequence[Point]) -> bool:
    k = len(piece)
    if k < 3:
        return False
    return all(orient(piece[i], piece[(i + 1) % k], pt) >= 0 for i in range(k))


def disk_meets_piece(center: Point, r: Fraction, piece: Sequence[Point]) -> bool:
    if _point_in_convex(center, piece):
        return True
    r2 = r * r
    k = len(piece)
    edges = [(piece[0], piece[1])] if k == 2 else [(piece[i], piece[(i + 1) % k]) for i in range(k)]
    return any(point_segment_dist2(center, a, b) <= r2 for a, b in edges)


def intersects(o1: GeoObject, o2: GeoObject) -> bool:
    """Closed-set intersection; tangency counts."""
    if isinstance(o1, Disk) and isinstance(o2, Disk):
        s = o1.radius + o2.radius
        return dist2(o1.center, o2.center) <= s * s
    if isinstance(o2, Disk):
        o1, o2 = o2, o1
    if isinstance(o1, Disk):
        return any(disk_meets_piece(o1.center, o1.radius, pc) for pc in o2.pieces())
    # quick reject on extents before the piecewise test
    a, b = o1.extent(), o2.extent()
    if a[2] < b[0] or b[2] < a[0] or a[3] < b[1] or b[3] < a[1]:
        return False
    return any(convex_intersect(p, q) for p in o1.pieces() for q in o2.pieces())
