"""Independent oracles and seeded random corpora shared by the tests.

The oracles here use nothing from the package beyond its data types, so a
solver bug cannot hide behind a matching bug in the reference.
"""
from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from geohom.geometry import Disk, Point, Scene, intersection_graph
from geohom.graph import Graph
from geohom.solver import ListInstance
from geohom.target import TargetGraph

CORPUS_SIZE = 1000
CORPUS_SEED = 20240517


def bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if (mask >> i) & 1]


def all_list_homs(inst: ListInstance):
    """Every map respecting lists and edges, by plain product enumeration."""
    H = inst.target
    edges = inst.graph.edges()
    for f in itertools.product(*(bits(m) for m in inst.lists)):
        if all((H.adj[f[u]] >> f[v]) & 1 for u, v in edges):
            yield f


def oracle(inst: ListInstance) -> bool:
    return next(all_list_homs(inst), None) is not None


def is_hom(inst: ListInstance, f) -> bool:
    H = inst.target
    if len(f) != inst.n:
        return False
    if any(not (inst.lists[v] >> f[v]) & 1 for v in range(inst.n)):
        return False
    return all((H.adj[f[u]] >> f[v]) & 1 for u, v in inst.graph.edges())


def random_target(rng: random.Random, k: int | None = None) -> TargetGraph:
    k = k or rng.randint(1, 5)
    labels = [str(i + 1) for i in range(k)]
    p = rng.choice((0.3, 0.5, 0.7))
    edges = [(a, a) for a in labels if rng.random() < 0.5]
    edges += [(a, b) for a, b in itertools.combinations(labels, 2) if rng.random() < p]
    return TargetGraph.from_edges(labels, edges)


def random_lists(rng: random.Random, H: TargetGraph, n: int, max_size: int | None = None) -> list[int]:
    out = []
    for _ in range(n):
        cols = [c for c in range(H.size) if rng.random() < 0.6]
        if not cols:
            cols = [rng.randrange(H.size)]
        if max_size is not None:
            rng.shuffle(cols)
            cols = cols[:max_size]
        out.append(sum(1 << c for c in cols))
    return out


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def random_disk_scene(rng: random.Random, n: int, side: int) -> Scene:
    """Unit-radius disks anchored at their centres, centres on a 1/4 grid."""
    objs = []
    for _ in range(n):
        c = Point(Fraction(rng.randint(0, 4 * side), 4), Fraction(rng.randint(0, 4 * side), 4))
        objs.append(Disk(c, Fraction(1), anchor=c))
    return Scene(tuple(objs))


def connected_disk_scene(rng: random.Random, n: int, spread: int = 2) -> Scene:
    """A random walk of unit disks; each new disk meets an earlier one."""
    objs = [Disk(Point(0, 0), Fraction(1), anchor=Point(0, 0))]
    while len(objs) < n:
        base = rng.choice(objs).center
        dx = Fraction(rng.randint(-4 * spread, 4 * spread), 4)
        dy = Fraction(rng.randint(-4 * spread, 4 * spread), 4)
        c = Point(base.x + dx, base.y + dy)
        if dx * dx + dy * dy > 4:
            continue
        objs.append(Disk(c, Fraction(1), anchor=c))
    return Scene(tuple(objs))


@dataclass(frozen=True)
class Case:
    seed: int
    inst: ListInstance
    scene: Scene


@functools.lru_cache(maxsize=None)
def corpus(size: int = CORPUS_SIZE, seed: int = CORPUS_SEED) -> tuple[Case, ...]:
    """Scene-backed instances: n <= 10, |V(H)| <= 5, random loops and lists.

    A third of the cases have lists of at most two colors.
    """
    rng = random.Random(seed)
    out = []
    for i in range(size):
        H = random_target(rng)
        n = rng.randint(1, 10)
        scene = random_disk_scene(rng, n, rng.choice((2, 3, 5, 8)))
        g = intersection_graph(scene)
        lists = random_lists(rng, H, n, 2 if i % 3 == 0 else None)
        out.append(Case(i, ListInstance(H, g, tuple(lists)), scene))
    return tuple(out)


def brute_vertex_cover(g: Graph) -> int:
    for k in range(g.n + 1):
        for S in itertools.combinations(range(g.n), k):
            s = set(S)
            if all(u in s or v in s for u, v in g.edges()):
                return k
    return g.n


def brute_max_cut(g: Graph, w=None) -> Fraction:
    best = Fraction(0)
    edges = g.edges()
    for side in itertools.product((0, 1), repeat=g.n):
        cut = sum((Fraction(1 if w is None else w[e]) for e in edges if side[e[0]] != side[e[1]]), Fraction(0))
        best = max(best, cut)
    return best


def clique_colorings_oracle(clique, H: TargetGraph, lists) -> set:
    """All list-respecting colorings of a clique, as sorted (vertex, color) tuples.

    Plain depth-first extension: each new color must be adjacent (or equal
    with a loop) to every color placed so far.
    """
    out = set()

    def extend(i, cols):
        if i == len(clique):
            out.add(tuple(zip(clique, cols)))
            return
        for c in range(H.size):
            if (lists[clique[i]] >> c) & 1 and all(H.adjacent(a, c) for a in cols):
                extend(i + 1, cols + [c])

    extend(0, [])
    return out
