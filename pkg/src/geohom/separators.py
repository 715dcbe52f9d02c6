"""Balanced vertex separators, clique-based separators and grid-line separators."""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Callable, Iterable, Sequence

from .graph import Graph, components

if TYPE_CHECKING:
    from .geometry import Scene

EXHAUSTIVE_MAX_N = 18


def is_balanced(g: Graph, vertices: Iterable[int], sep: Iterable[int], delta: Fraction) -> bool:
    """Every component of ``vertices`` minus ``sep`` has at most delta*n vertices."""
    verts = set(vertices)
    limit = Fraction(delta) * len(verts)
    rest = verts - set(sep)
    return all(len(c) <= limit for c in components(g, rest))


def _largest_piece(g: Graph, verts: set[int], sep: Iterable[int]) -> int:
    return max((len(c) for c in components(g, verts - set(sep))), default=0)


def _bfs_levels(g: Graph, verts: set[int], root: int) -> list[list[int]]:
    dist = {root: 0}
    levels = [[root]]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted(g.adj[u]):
            if w in verts and w not in dist:
                dist[w] = dist[u] + 1
                if dist[w] == len(levels):
                    levels.append([])
                levels[dist[w]].append(w)
                queue.append(w)
    return [sorted(level) for level in levels]


def _prune(g: Graph, verts: set[int], sep: list[int], delta: Fraction) -> list[int]:
    """Greedily drop separator vertices while balance survives."""
    cur = list(sep)
    for v in sorted(sep):
        trial = [x for x in cur if x != v]
        if is_balanced(g, verts, trial, delta):
            cur = trial
    return sorted(cur)


def balanced_vertex_separator(
    g: Graph,
    delta: Fraction = Fraction(2, 3),
    size_budget: int | None = None,
    vertices: Iterable[int] | None = None,
) -> list[int] | None:
    """A set S with |S| <= size_budget whose removal leaves components of at
    most delta*n vertices, or None if the search finds nothing.

    Small graphs (n <= 18) are searched exhaustively by increasing size; larger
    ones try BFS-level cuts from several roots, then prune greedily.
    """
    verts = set(range(g.n)) if vertices is None else set(vertices)
    n = len(verts)
    delta = Fraction(delta)
    if size_budget is None:
        m = sum(1 for u in verts for w in g.adj[u] if w in verts and u < w)
        size_budget = math.ceil(4 * math.sqrt(m))
    if is_balanced(g, verts, (), delta):
        return []
    order = sorted(verts)
    if n <= EXHAUSTIVE_MAX_N:
        # smallest size first; among those the largest leftover piece decides
        for k in range(1, min(size_budget, n) + 1):
            best = None
            for sep in itertools.combinations(order, k):
                if is_balanced(g, verts, sep, delta):
                    key = (_largest_piece(g, verts, sep), sep)
                    if best is None or key < best:
                        best = key
            if best is not None:
                return list(best[1])
        return None
    roots = _pick_roots(g, verts)
    best: list[int] | None = None
    for root in roots:
        levels = _bfs_levels(g, verts, root)
        for level in levels[1:-1] if len(levels) > 2 else levels:
            if best is not None and len(level) >= len(best) * 2:
                continue
            if is_balanced(g, verts, level, delta):
                cand = _prune(g, verts, level, delta)
                if best is None or (len(cand), cand) < (len(best), best):
                    best = cand
    if best is not None and len(best) <= size_budget:
        return best
    return None


def _pick_roots(g: Graph, verts: set[int], count: int = 6) -> list[int]:
    order = sorted(verts)
    roots = [order[0], max(order, key=lambda v: (sum(w in verts for w in g.adj[v]), -v))]
    # double sweep: the far end of a BFS is a good start for layered cuts
    for r in list(roots):
        far = _bfs_levels(g, verts, r)[-1]
        roots.append(far[0])
    step = max(1, len(order) // count)
    roots += order[::step][:count]
    seen = []
    for r in roots:
        if r not in seen:
            seen.append(r)
    return seen


def greedy_clique_cover(g: Graph, vertices: Sequence[int]) -> list[list[int]]:
    """Split ``vertices`` into cliques of g, scanning in sorted order."""
    cliques: list[list[int]] = []
    for v in sorted(vertices):
        for c in cliques:
            if all(w in g.adj[v] for w in c):
                c.append(v)
                break
        else:
            cliques.append([v])
    return cliques


@dataclass(frozen=True)
class CliqueSeparator:
    cliques: tuple[tuple[int, ...], ...]
    delta: Fraction

    @property
    def vertices(self) -> list[int]:
        return sorted(v for c in self.cliques for v in c)

    @property
    def weight(self) -> float:
        return sum(math.log2(len(c) + 1) for c in self.cliques)

    def check(self, g: Graph, vertices: Iterable[int] | None = None) -> bool:
        verts = set(range(g.n)) if vertices is None else set(vertices)
        seen: set[int] = set()
        for c in self.cliques:
            if not set(c) <= verts or seen & set(c) or not g.is_clique(c):
                return False
            seen |= set(c)
        return is_balanced(g, verts, seen, self.delta)

    def dumps(self) -> str:
        return "".join("sep clique " + " ".join(map(str, c)) + "\n" for c in self.cliques)


# provider signature used by the clique-based solver
SeparatorProvider = Callable[[Graph, Sequence[int]], "CliqueSeparator | None"]


def fallback_clique_separator(
    g: Graph, vertices: Sequence[int], delta: Fraction = Fraction(2, 3)
) -> CliqueSeparator | None:
    sep = balanced_vertex_separator(g, delta, None, vertices)
    if sep is None:
        return None
    cliques = tuple(tuple(c) for c in greedy_clique_cover(g, sep))
    return CliqueSeparator(cliques, Fraction(delta))


# ------------------------------------------------------------ geometric


@dataclass(frozen=True)
class LineSeparation:
    """Either the small-area marker or a grid line with its three-way split.

    ``axis`` is "V" (line x = coord) or "H" (line y = coord); ``index`` counts
    grid lines from the low edge of the bounding box.
    """

    small_area: bool
    axis: str = ""
    coord: int = 0
    index: int = 0
    crossing: tuple[int, ...] = ()
    left: tuple[int, ...] = ()
    right: tuple[int, ...] = ()
    area: int = 0

    def check(self, scene: "Scene", indices: Sequence[int] | None = None) -> bool:
        from .geometry import area

        idx = sorted(range(len(scene)) if indices is None else indices)
        if self.small_area:
            return True
        if sorted(self.crossing + self.left + self.right) != idx:
            return False
        k = self.coord
        lo, hi = (0, 2) if self.axis == "V" else (1, 3)
        for i in self.left:
            if not scene.objects[i].extent()[hi] < k:
                return False
        for i in self.right:
            if not scene.objects[i].extent()[lo] > k:
                return False
        for i in self.crossing:
            e = scene.objects[i].extent()
            if not e[lo] <= k <= e[hi]:
                return False
        a = area(scene.objects[i] for i in idx)
        for side in (self.left, self.right):
            if side and 4 * area(scene.objects[i] for i in side) > 3 * a:
                return False
        return True


SMALL_AREA = LineSeparation(True)


def area_is_small(a: int, n: int, c_area: Fraction) -> bool:
    """a <= c_area * n**(2/3), compared exactly by cubing."""
    c = Fraction(c_area)
    return Fraction(a) ** 3 <= c**3 * n * n


def line_candidates(width: int) -> range:
    """Middle-third line indices 0..width of a box ``width`` cells wide."""
    return range(-(-width // 3), (2 * width) // 3 + 1)


def line_separator(
    scene: "Scene",
    c_area: Fraction = Fraction(2),
    indices: Sequence[int] | None = None,
    graph: Graph | None = None,
    r_max: Fraction | None = None,
) -> LineSeparation:
    """Area-balanced grid line crossing as few objects as possible.

    Scans the middle third of the vertical and the horizontal grid lines of
    the bounding box and keeps the minimum by (crossings, axis, index).
    """
    from .geometry import bounding_box, intersection_graph, validate_fat_similarly_sized

    idx = sorted(range(len(scene)) if indices is None else indices)
    if not idx:
        raise ValueError("line separator of an empty object set")
    sub = scene.subset(idx)
    for i, o in enumerate(sub.objects):
        if o.anchor is None or not o.contains_anchor_disk():
            raise ValueError(f"object {idx[i]} is not a validated fat object")
    if r_max is not None and not validate_fat_similarly_sized(sub, r_max):
        raise ValueError("scene is not fat and similarly sized")
    g = graph.induced(idx)[0] if graph is not None else intersection_graph(sub)
    if len(components(g)) != 1:
        raise ValueError("line separator needs a connected intersection graph")
    n = len(idx)
    box = bounding_box(sub.objects)
    a = box.area
    if area_is_small(a, n, c_area):
        return SMALL_AREA
    ext = [o.extent() for o in sub.objects]
    best = None
    for axis, lo, hi, start, width in (
        ("V", 0, 2, box.col0, box.columns),
        ("H", 1, 3, box.row0, box.rows),
    ):
        for j in line_candidates(width):
            k = start + j
            cnt = sum(1 for e in ext if e[lo] <= k <= e[hi])
            key = (cnt, axis, j)
            if best is None or key < best[0]:
                best = (key, axis, k, j, lo, hi)
    if best is None:
        return SMALL_AREA
    _, axis, k, j, lo, hi = best
    left = tuple(idx[i] for i, e in enumerate(ext) if e[hi] < k)
    right = tuple(idx[i] for i, e in enumerate(ext) if e[lo] > k)
    cross = tuple(idx[i] for i, e in enumerate(ext) if e[lo] <= k <= e[hi])
    return LineSeparation(False, axis, k, j, cross, left, right, a)


def _scale_cell(o) -> tuple[int, int, int]:
    """(scale exponent, column, row) of the dyadic cell holding the anchor."""
    x0, y0, x1, y1 = o.extent()
    diam = max(x1 - x0, y1 - y0)
    e = max(0, math.ceil(math.log2(diam))) if diam > 0 else 0
    while Fraction(2) ** e < diam:
        e += 1
    side = Fraction(2) ** e
    return e, math.floor(o.anchor.x / side), math.floor(o.anchor.y / side)


def clique_based_separator(
    scene: "Scene",
    g: Graph,
    delta: Fraction = Fraction(2, 3),
    vertices: Sequence[int] | None = None,
) -> CliqueSeparator | None:
    """Cells crossed by a grid line, split into cliques; falls back to a
    vertex separator covered greedily by cliques.

    Objects are grouped by the cell holding their anchor: unit cells when
    every object carries a valid inscribed disk, dyadic cells scaled to the
    object's size otherwise.  Among the balanced lines the one of least
    weight wins, ties by (axis, coordinate).
    """
    verts = sorted(range(g.n) if vertices is None else vertices)
    delta = Fraction(delta)
    if not verts:
        return CliqueSeparator((), delta)
    if is_balanced(g, verts, (), delta):
        return CliqueSeparator((), delta)
    objs = [scene.objects[v] for v in verts]
    if all(o.anchor is not None for o in objs):
        unit = all(o.contains_anchor_disk() for o in objs)
        keys = {}
        for v, o in zip(verts, objs):
            if unit:
                keys[v] = (0, math.floor(o.anchor.x), math.floor(o.anchor.y))
            else:
                keys[v] = _scale_cell(o)
        ext = {v: scene.objects[v].extent() for v in verts}
        best = None
        for axis, lo, hi in (("V", 0, 2), ("H", 1, 3)):
            lines = range(
                math.floor(min(ext[v][lo] for v in verts)),
                math.ceil(max(ext[v][hi] for v in verts)) + 1,
            )
            for k in lines:
                S = [v for v in verts if ext[v][lo] <= k <= ext[v][hi]]
                if not S or not is_balanced(g, verts, S, delta):
                    continue
                groups: dict = {}
                for v in S:
                    groups.setdefault(keys[v], []).append(v)
                cliques = []
                for key in sorted(groups):
                    cliques += greedy_clique_cover(g, groups[key])
                sep = CliqueSeparator(tuple(tuple(c) for c in cliques), delta)
                cand = (sep.weight, axis, k)
                if best is None or cand < best[0]:
                    best = (cand, sep)
        if best is not None:
            return best[1]
    return fallback_clique_separator(g, verts, delta)
