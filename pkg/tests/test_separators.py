import itertools
import math
import random
from fractions import Fraction

import pytest

from geohom.geometry import Disk, Point, Scene, area, intersection_graph
from geohom.graph import Graph, components
from geohom.separators import (
    CliqueSeparator,
    area_is_small,
    balanced_vertex_separator,
    clique_based_separator,
    greedy_clique_cover,
    is_balanced,
    line_candidates,
    line_separator,
)
from helpers import connected_disk_scene, random_disk_scene, random_graph

F = Fraction


def unit_disk(x, y):
    c = Point(F(x), F(y))
    return Disk(c, F(1), anchor=c)


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def grid(k):
    idx = lambda r, c: r * k + c  # noqa: E731
    edges = [(idx(r, c), idx(r, c + 1)) for r in range(k) for c in range(k - 1)]
    edges += [(idx(r, c), idx(r + 1, c)) for r in range(k - 1) for c in range(k)]
    return Graph.from_edges(k * k, edges)


def test_vertex_separator_examples():
    assert balanced_vertex_separator(path(9), F(2, 3), 1) == [4]
    k5 = Graph.from_edges(5, itertools.combinations(range(5), 2))
    assert balanced_vertex_separator(k5, F(2, 3), 1) is None
    sep = balanced_vertex_separator(grid(5), F(2, 3), 5)
    assert sep is not None and len(sep) <= 5
    assert is_balanced(grid(5), range(25), sep, F(2, 3))


def test_vertex_separator_is_minimum_on_small_graphs():
    rng = random.Random(43)
    for _ in range(60):
        n = rng.randint(2, 9)
        g = random_graph(rng, n, 0.4)
        sep = balanced_vertex_separator(g, F(2, 3), n)
        best = next(
            k for k in range(n + 1)
            if any(is_balanced(g, range(n), S, F(2, 3)) for S in itertools.combinations(range(n), k))
        )
        assert sep is not None and len(sep) == best


def test_vertex_separator_heuristic_on_large_graphs():
    rng = random.Random(47)
    for k in (6, 8, 10):
        g = grid(k)
        sep = balanced_vertex_separator(g, F(2, 3), None)
        assert sep is not None and is_balanced(g, range(g.n), sep, F(2, 3))
        assert len(sep) <= math.ceil(4 * math.sqrt(g.m))
    for _ in range(10):
        s = connected_disk_scene(rng, 40)
        g = intersection_graph(s)
        sep = balanced_vertex_separator(g)
        if sep is not None:
            assert is_balanced(g, range(g.n), sep, F(2, 3))


def test_chain_line_separator():
    scene = Scene(tuple(unit_disk(2 * i, 0) for i in range(60)))
    sep = line_separator(scene, F(2))
    assert not sep.small_area
    assert sep.axis == "V" and len(sep.crossing) <= 2
    assert sep.check(scene)
    a = area(scene.objects)
    for side in (sep.left, sep.right):
        assert 4 * area(scene.objects[i] for i in side) <= 3 * a


def test_small_area_marker():
    scene = Scene((unit_disk(0, 0), unit_disk(1, 0)))
    # area 6 <= 4 * 2^(2/3)
    assert line_separator(scene, F(4)).small_area
    assert area_is_small(8, 8, F(2))
    assert not area_is_small(9, 8, F(2))


def test_line_separator_rejects_bad_input():
    with pytest.raises(ValueError):
        line_separator(Scene((unit_disk(0, 0), unit_disk(10, 0))), F(1, 100))
    with pytest.raises(ValueError):
        line_separator(Scene((Disk(Point(0, 0), 1),)), F(1, 100))
    with pytest.raises(ValueError):
        line_separator(Scene(()), F(2))


def test_line_candidates_are_middle_third():
    assert list(line_candidates(9)) == [3, 4, 5, 6]
    assert list(line_candidates(10)) == [4, 5, 6]


def test_clique_separator_on_disk_grid():
    k = 8
    scene = Scene(tuple(unit_disk(2 * c, 2 * r) for r in range(k) for c in range(k)))
    g = intersection_graph(scene)
    sep = clique_based_separator(scene, g, F(2, 3))
    assert sep is not None and sep.check(g)
    assert sep.weight <= 2 * k


def test_clique_separator_edgeless():
    scene = Scene(tuple(unit_disk(3 * i, 0) for i in range(5)))
    g = intersection_graph(scene)
    sep = clique_based_separator(scene, g, F(2, 3))
    assert sep.cliques == () and sep.check(g)


def test_clique_separators_verify_on_random_scenes():
    rng = random.Random(53)
    found = 0
    for _ in range(200):
        s = random_disk_scene(rng, rng.randint(5, 40), rng.choice((4, 8, 12)))
        g = intersection_graph(s)
        sep = clique_based_separator(s, g, F(2, 3))
        if sep is not None:
            assert sep.check(g)
            found += 1
    assert found > 150


def test_weight_of_singletons():
    sep = CliqueSeparator(((1,), (2,), (3,)), F(2, 3))
    assert sep.weight == 3.0
    merged = CliqueSeparator(((1, 2, 3),), F(2, 3))
    assert merged.weight == 2.0


def test_greedy_cover_parts_are_cliques():
    rng = random.Random(59)
    for _ in range(100):
        g = random_graph(rng, 12, 0.5)
        verts = sorted(rng.sample(range(12), 8))
        cover = greedy_clique_cover(g, verts)
        assert sorted(v for c in cover for v in c) == verts
        assert all(g.is_clique(c) for c in cover)


def test_is_balanced_counts_components():
    g = path(6)
    assert is_balanced(g, range(6), [2], F(2, 3))
    assert not is_balanced(g, range(6), [0], F(2, 3))
    assert len(components(g, [0, 1, 3, 4, 5])) == 2
