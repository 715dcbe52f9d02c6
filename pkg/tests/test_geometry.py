import random
from fractions import Fraction

import pytest
import shapely
from hypothesis import given, settings
from hypothesis import strategies as st

from geohom.geometry import (
    ConvexPolygon,
    Disk,
    GeometryError,
    Point,
    Polyline,
    Scene,
    SceneFormatError,
    Segment,
    Triangle,
    area,
    bounding_box,
    cell_cliques,
    intersection_graph,
    intersection_graph_naive,
    intersects,
    render_svg,
    validate_fat_similarly_sized,
)
from helpers import connected_disk_scene, random_disk_scene

F = Fraction
P = Point
# measured worst case: n touching unit disks span at most 2n + 1 cells per
# axis, and (2n + 1)^2 <= 9 n^2 for n >= 1
AREA_C = 9


def unit_disk(x, y):
    c = P(F(x), F(y))
    return Disk(c, F(1), anchor=c)


def test_disk_examples():
    assert intersects(Disk(P(0, 0), 1), Disk(P(2, 0), 1))
    assert not intersects(Disk(P(0, 0), 1), Disk(P(F(5, 2), 0), 1))


def test_triangles_sharing_a_vertex_meet():
    t1 = Triangle(P(0, 0), P(1, 0), P(0, 1))
    t2 = Triangle(P(1, 0), P(2, 0), P(2, 1))
    assert intersects(t1, t2)
    t3 = Triangle(P(3, 0), P(4, 0), P(4, 1))
    assert not intersects(t1, t3)


def test_segment_and_polyline_cases():
    s1 = Segment(P(0, 0), P(2, 2))
    s2 = Segment(P(0, 2), P(2, 0))
    assert intersects(s1, s2)
    assert intersects(Segment(P(0, 0), P(1, 0)), Segment(P(1, 0), P(2, 5)))
    assert not intersects(Segment(P(0, 0), P(1, 0)), Segment(P(2, 0), P(3, 0)))
    pl = Polyline((P(-1, 5), P(1, 5), P(1, 3)))
    assert not intersects(pl, s1)
    assert intersects(Polyline((P(-1, 5), P(3, -1), P(5, 0))), s1)


def test_containment_counts_as_intersection():
    big = ConvexPolygon((P(0, 0), P(10, 0), P(10, 10), P(0, 10)))
    assert intersects(big, Triangle(P(4, 4), P(5, 4), P(4, 5)))
    assert intersects(big, Disk(P(5, 5), F(1, 10)))
    assert intersects(Disk(P(5, 5), 100), big)


def test_malformed_objects_rejected():
    with pytest.raises(GeometryError):
        Disk(P(0, 0), 0)
    with pytest.raises(GeometryError):
        Triangle(P(0, 0), P(1, 1), P(2, 2))
    with pytest.raises(GeometryError):
        ConvexPolygon((P(0, 0), P(0, 1), P(1, 0)))
    with pytest.raises(GeometryError):
        Segment(P(1, 1), P(1, 1))
    with pytest.raises(GeometryError):
        Polyline((P(0, 0),))


def _shapely(o):
    if isinstance(o, Segment):
        return shapely.LineString([(float(o.p.x), float(o.p.y)), (float(o.q.x), float(o.q.y))])
    if isinstance(o, Polyline):
        return shapely.LineString([(float(p.x), float(p.y)) for p in o.points])
    pts = o.pieces()[0]
    return shapely.Polygon([(float(p.x), float(p.y)) for p in pts])


def _random_shape(rng):
    def pt():
        return P(F(rng.randint(0, 40), 4), F(rng.randint(0, 40), 4))

    kind = rng.choice(("seg", "tri", "pline", "poly"))
    while True:
        try:
            if kind == "seg":
                return Segment(pt(), pt())
            if kind == "tri":
                return Triangle(pt(), pt(), pt())
            if kind == "pline":
                return Polyline(tuple(pt() for _ in range(rng.randint(2, 4))))
            x, y, w, h = rng.randint(0, 30), rng.randint(0, 30), rng.randint(1, 8), rng.randint(1, 8)
            return ConvexPolygon((P(x, y), P(x + w, y), P(x + w, y + h), P(x, y + h)))
        except GeometryError:
            continue


def test_predicates_agree_with_shapely_away_from_tangency():
    rng = random.Random(23)
    compared = 0
    for _ in range(3000):
        a, b = _random_shape(rng), _random_shape(rng)
        sa, sb = _shapely(a), _shapely(b)
        d = sa.distance(sb)
        if 0 < d < 1e-6:
            continue
        if d == 0 and not sa.intersects(sb):
            continue
        assert intersects(a, b) == (d == 0), (a, b)
        compared += 1
    assert compared > 2500


def test_disk_against_exact_distance():
    rng = random.Random(29)
    for _ in range(1000):
        shape = _random_shape(rng)
        d = Disk(P(F(rng.randint(0, 40), 4), F(rng.randint(0, 40), 4)), F(rng.randint(1, 12), 4))
        sd = _shapely(shape).distance(shapely.Point(float(d.center.x), float(d.center.y)))
        if abs(sd - float(d.radius)) < 1e-6:
            continue
        assert intersects(d, shape) == (sd < float(d.radius))


def _scaled(o, k):
    def sp(p):
        return P(p.x * k, p.y * k)

    anchor = None if o.anchor is None else sp(o.anchor)
    if isinstance(o, Disk):
        return Disk(sp(o.center), o.radius * k, anchor=anchor)
    if isinstance(o, Segment):
        return Segment(sp(o.p), sp(o.q))
    if isinstance(o, Triangle):
        return Triangle(sp(o.a), sp(o.b), sp(o.c), anchor=anchor)
    if isinstance(o, ConvexPolygon):
        return ConvexPolygon(tuple(sp(p) for p in o.vertices), anchor=anchor)
    return Polyline(tuple(sp(p) for p in o.points))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 6))
def test_intersects_symmetric_reflexive_and_scale_invariant(seed, k):
    rng = random.Random(seed)
    shapes = [_random_shape(rng) for _ in range(4)] + [unit_disk(rng.randint(0, 9), rng.randint(0, 9))]
    scene = Scene(tuple(shapes))
    for a in shapes:
        assert intersects(a, a)
        for b in shapes:
            assert intersects(a, b) == intersects(b, a)
    scaled = Scene(tuple(_scaled(o, k) for o in shapes))
    assert intersection_graph(scaled) == intersection_graph(scene)


def test_intersection_graph_examples():
    # radii 1, 2, 3 on a 3-4-5 triangle: every pair is tangent
    tangent = Scene((Disk(P(0, 0), 1), Disk(P(3, 0), 2), Disk(P(0, 4), 3)))
    assert intersection_graph(tangent).m == 3
    spaced = Scene(tuple(unit_disk(3 * i, 0) for i in range(10)))
    assert intersection_graph(spaced).m == 0


def test_bucketed_graph_equals_naive():
    rng = random.Random(31)
    for _ in range(30):
        n = rng.randint(30, 90)
        scene = random_disk_scene(rng, n, rng.choice((6, 10, 20)))
        objs = list(scene.objects)
        # mix in long segments and a huge disk so the big-object path runs
        objs.append(Segment(P(0, 0), P(20, rng.randint(0, 20))))
        objs.append(Disk(P(10, 10), 30))
        s = Scene(tuple(objs))
        assert intersection_graph(s) == intersection_graph_naive(s)


def test_bounding_box_examples():
    r = bounding_box([Disk(P(F(1, 2), F(1, 2)), F(1, 2))])
    assert (r.columns, r.rows, r.area) == (1, 1, 1)
    r = bounding_box([Disk(P(1, 1), 1)])
    assert (r.col0, r.row0, r.col1, r.row1) == (0, 0, 1, 1) and r.area == 4
    with pytest.raises(ValueError):
        bounding_box([])


def test_connected_scene_area_is_quadratic():
    # diagonal path with steps (6/5, 8/5) of length exactly 2
    for n in (1, 5, 20, 60):
        path = [unit_disk(F(6, 5) * i, F(8, 5) * i) for i in range(n)]
        assert area(path) <= AREA_C * n * n
    rng = random.Random(37)
    for _ in range(50):
        n = rng.randint(1, 40)
        s = connected_disk_scene(rng, n)
        assert area(s.objects) <= AREA_C * n * n


def test_fat_validation_examples():
    assert validate_fat_similarly_sized(Scene((unit_disk(0, 0),)), 1)
    seg = Segment(P(0, 0), P(1, 0))
    assert not validate_fat_similarly_sized(Scene((seg,)), 10)
    s3 = F(3650401, 2107560)
    tri = Triangle(P(0, 0), P(4, 0), P(2, 2 * s3))
    cx, cy = F(2), 2 * s3 / 3
    anchored = Triangle(tri.a, tri.b, tri.c, anchor=P(cx, cy))
    assert validate_fat_similarly_sized(Scene((anchored,)), 3)
    assert not validate_fat_similarly_sized(Scene((anchored,)), 2)
    off = Disk(P(0, 0), 1, anchor=P(F(1, 2), 0))
    report = validate_fat_similarly_sized(Scene((off,)), 2)
    assert not report and report.failures[0][0] == 0


def test_cell_clique_examples():
    s = Scene((Disk(P(F(1, 4), F(1, 4)), 1, anchor=P(F(1, 4), F(1, 4))),
               Disk(P(F(3, 4), F(3, 4)), 1, anchor=P(F(3, 4), F(3, 4)))))
    assert cell_cliques(s) == [[0, 1]]
    assert intersects(*s.objects)
    s2 = Scene((unit_disk(F(1, 2), F(1, 2)), unit_disk(F(3, 2), F(1, 2))))
    assert cell_cliques(s2) == [[0], [1]]
    with pytest.raises(ValueError):
        cell_cliques(Scene((Disk(P(0, 0), 1),)))


def test_cell_cliques_are_cliques():
    rng = random.Random(41)
    for _ in range(100):
        s = random_disk_scene(rng, rng.randint(1, 40), rng.choice((2, 4, 8)))
        g = intersection_graph(s)
        parts = cell_cliques(s)
        assert sorted(v for p in parts for v in p) == list(range(len(s)))
        assert all(g.is_clique(p) for p in parts)


def test_boundary_anchor_goes_to_floor_cell():
    s = Scene((unit_disk(1, 1), unit_disk(F(3, 2), F(3, 2))))
    assert cell_cliques(s) == [[0, 1]]


def test_scene_text_roundtrip():
    objs = (
        unit_disk(F(1, 3), 2),
        Segment(P(0, 0), P(1, F(-2, 7))),
        Triangle(P(0, 0), P(4, 0), P(0, 4), anchor=P(1, 1)),
        ConvexPolygon((P(0, 0), P(2, 0), P(2, 2), P(0, 2)), anchor=P(1, 1)),
        Polyline((P(0, 0), P(1, 1), P(2, 0))),
    )
    s = Scene(objs)
    assert Scene.loads(s.dumps()) == s
    with pytest.raises(SceneFormatError):
        Scene.loads("disk 0 0\n")
    with pytest.raises(SceneFormatError):
        Scene.loads("seg 0 0 1 1 anchor 0 0\n")
    with pytest.raises(SceneFormatError):
        Scene.loads("blob 1\n")
    with pytest.raises(SceneFormatError):
        Scene.loads("disk 0 0 -1\n")


def test_svg_examples():
    empty = render_svg(Scene(()))
    assert empty.startswith("<?xml") and "<svg" in empty and empty.rstrip().endswith("</svg>")
    one = render_svg(Scene((unit_disk(0, 0),)))
    assert one.count("<circle") == 1
    s = random_disk_scene(random.Random(1), 12, 4)
    assert render_svg(s, {0: "ab"}) == render_svg(s, {0: "ab"})
    assert render_svg(s).count("<circle") == 12
