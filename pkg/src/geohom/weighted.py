"""Minimum-cost homomorphisms with vertex costs and optional edge costs.

Costs are Fractions.  ``INF`` (None) stands for "no homomorphism at all".
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Mapping, Sequence

from .config import DEFAULT, RunConfig
from .graph import Graph, components
from .separators import SeparatorProvider, fallback_clique_separator
from .solver.cliques import enumerate_clique_colorings
from .solver.instance import ListInstance, SearchTimeout, Stats
from .solver.propagate import propagate
from .target import TargetGraph, iter_bits

if TYPE_CHECKING:
    from .geometry import Scene

ZERO = Fraction(0)


@dataclass
class CostTables:
    """``vcost[v][c]`` per vertex and color; ``ecost[(u, v)][(a, b)]`` per edge
    u < v with f(u) = a, f(v) = b (missing pairs cost 0)."""

    vcost: list[list[Fraction]]
    ecost: dict[tuple[int, int], dict[tuple[int, int], Fraction]] | None = None
    budget: Fraction | None = None

    def __post_init__(self):
        for row in self.vcost:
            for q in row:
                if q < 0:
                    raise ValueError("costs must be nonnegative")
        for table in (self.ecost or {}).values():
            for q in table.values():
                if q < 0:
                    raise ValueError("costs must be nonnegative")

    def edge_cost(self, u: int, v: int, a: int, b: int) -> Fraction:
        if not self.ecost:
            return 0
        if u > v:
            u, v, a, b = v, u, b, a
        return self.ecost.get((u, v), {}).get((a, b), 0)

    def cost(self, g: Graph, f: Sequence[int]) -> Fraction:
        total = sum((self.vcost[v][f[v]] for v in range(g.n)), ZERO)
        for u, v in g.edges():
            total += self.edge_cost(u, v, f[u], f[v])
        return total


@dataclass
class MinCostResult:
    value: Fraction | None
    witness: tuple[int, ...] | None
    stats: Stats = field(default_factory=Stats)
    method: str = ""
    timed_out: bool = False

    def decide(self, budget: Fraction) -> bool:
        return self.value is not None and self.value <= budget


def lists_to_costs(inst: ListInstance) -> tuple[Graph, CostTables]:
    """Cost 0 inside the list, 1 outside, budget 0."""
    k = inst.target.size
    vcost = [[ZERO if (m >> c) & 1 else Fraction(1) for c in range(k)] for m in inst.lists]
    return inst.graph, CostTables(vcost, None, ZERO)


def transfer_edge_costs(
    g: Graph, costs: CostTables, colored: Mapping[int, int]
) -> tuple[list[int], CostTables, Fraction]:
    """Fold the costs of colored vertices and their edges into the rest.

    Returns (kept vertices, tables on the graph induced by them, offset) with
    cost(f) = offset + cost'(f restricted to kept) for every f extending
    ``colored``.
    """
    kept = [v for v in range(g.n) if v not in colored]
    pos = {v: i for i, v in enumerate(kept)}
    offset = sum((costs.vcost[v][c] for v, c in colored.items()), ZERO)
    vcost = [list(costs.vcost[v]) for v in kept]
    k = len(costs.vcost[0]) if costs.vcost else 0
    ecost: dict = {}
    for u, v in g.edges():
        if u in colored and v in colored:
            offset += costs.edge_cost(u, v, colored[u], colored[v])
        elif u in colored or v in colored:
            s, w = (u, v) if u in colored else (v, u)
            row = vcost[pos[w]]
            for b in range(k):
                row[b] += costs.edge_cost(s, w, colored[s], b)
        elif costs.ecost and (u, v) in costs.ecost:
            ecost[(pos[u], pos[v])] = dict(costs.ecost[(u, v)])
    return kept, CostTables(vcost, ecost or None, costs.budget), offset


# "no solution cheaper than the bound"; the piece may still be feasible
ABOVE = object()


class _Weighted:
    """Separator recursion with an incumbent bound.

    Every call gets an exclusive upper bound ``ub`` (None for unbounded) and
    returns (value, witness) when the optimum is below it, ABOVE when it is
    not, and None when the piece has no homomorphism at all.  Any optimum
    below the bound is found exactly as without it, so witnesses do not
    depend on the bounds.
    """

    def __init__(self, g: Graph, H: TargetGraph, cfg: RunConfig, provider: SeparatorProvider, stats: Stats):
        self.g = g
        self.H = H
        self.cfg = cfg
        self.provider = provider
        self.stats = stats
        # a component's optimum depends only on its lists and vertex costs,
        # its separator only on its vertex set
        self.memo: dict = {}
        self.above: dict = {}
        self.seps: dict = {}
        self.mins: dict = {}

    def cheapest(self, row, mask: int):
        # keyed by row identity; the entry keeps the row alive so ids stay unique
        key = (id(row), mask)
        hit = self.mins.get(key)
        if hit is None:
            hit = (row, min((row[c] for c in iter_bits(mask)), default=None))
            self.mins[key] = hit
        return hit[1]

    def lower_bound(self, verts, lists, vcost):
        """Cheapest listed color per vertex; None if some list is empty."""
        total = 0
        for v in verts:
            m = self.cheapest(vcost[v], lists[v])
            if m is None:
                return None
            total += m
        return total

    # vcost here is a dict vertex -> list of costs, local to a recursion level
    def solve(self, active: set[int], lists: list[int], vcost, ecost: CostTables, depth: int, ub=None):
        self.stats.tick()
        self.stats.depth(depth)
        comps = components(self.g, active)
        lbs = [self.lower_bound(c, lists, vcost) for c in comps]
        if any(lb is None for lb in lbs):
            return None
        rest = sum(lbs)
        total = 0
        out: dict[int, int] = {}
        for comp, lb in zip(comps, lbs):
            rest -= lb
            sub_ub = None if ub is None else ub - total - rest
            if sub_ub is not None and lb >= sub_ub:
                return ABOVE
            res = self.component(comp, lists, vcost, ecost, depth, sub_ub)
            if res is None or res is ABOVE:
                return res
            total += res[0]
            out.update(res[1])
        return total, out

    def component(self, comp, lists, vcost, ecost, depth, ub=None):
        verts = sorted(comp)
        key = (tuple(verts), tuple(lists[v] for v in verts), tuple(tuple(vcost[v]) for v in verts))
        if key in self.memo:
            res = self.memo[key]
            if res is not None and ub is not None and res[0] >= ub:
                return ABOVE
            return res
        if ub is not None and self.above.get(key, -1) >= ub:
            return ABOVE
        res = self._component(comp, lists, vcost, ecost, depth, ub)
        if res is ABOVE:
            self.above[key] = max(self.above.get(key, ub), ub)
        else:
            self.memo[key] = res
        return res

    def _component(self, comp, lists, vcost, ecost, depth, ub):
        if len(comp) <= self.cfg.base_n:
            return self.branch_and_bound(comp, lists, vcost, ecost, ub)
        key = tuple(sorted(comp))
        if key not in self.seps:
            sep = self.provider(self.g, comp)
            if sep is not None and (not sep.cliques or not sep.check(self.g, comp)):
                sep = None
            self.seps[key] = sep
        sep = self.seps[key]
        if sep is None or not self.few_colorings(sep.cliques, lists):
            return self.branch_and_bound(comp, lists, vcost, ecost, ub)
        self.stats.separators += 1
        best = [None]
        self._color(set(comp), sep.cliques, 0, lists, {}, vcost, ecost, depth, best, ub)
        if best[0] is None:
            return None if ub is None else ABOVE
        return best[0]

    def restrict(self, lists: list[int], comp, coloring: dict[int, int]) -> bool:
        """Fix ``coloring`` and narrow only the direct neighbours.

        Pieces then depend on the separator colors next to them alone, so
        different separator colorings share memoised pieces.
        """
        for v, c in coloring.items():
            if not (lists[v] >> c) & 1:
                return False
            lists[v] = 1 << c
        for v, c in coloring.items():
            for w in self.g.adj[v]:
                if w in comp and w not in coloring:
                    lists[w] &= self.H.adj[c]
                    if not lists[w]:
                        return False
        return True

    def few_colorings(self, cliques, lists) -> bool:
        """Every clique has at most (|C|+1)^|I(H)| * (|R(H)|+1) colorings.

        That always holds when no two looped vertices of H are adjacent; with
        looped cliques in H a large separator clique can have exponentially
        many colorings, and branching on it costs more than it saves.
        """
        H = self.H
        irr = sum(1 for c in range(H.size) if not H.has_loop(c))
        refl = H.size - irr
        for clique in cliques:
            cap = (len(clique) + 1) ** irr * (refl + 1)
            found = itertools.islice(enumerate_clique_colorings(clique, H, lists), cap + 1)
            if sum(1 for _ in found) > cap:
                return False
        return True

    def _color(self, comp, cliques, i, lists, chosen, vcost, ecost, depth, best, ub):
        if i == len(cliques):
            rest = comp - set(chosen)
            base = sum(vcost[v][c] for v, c in chosen.items())
            for u in chosen:
                for w in self.g.adj[u]:
                    if w in chosen and u < w:
                        base += ecost.edge_cost(u, w, chosen[u], chosen[w])
            # push separator edges onto the remaining endpoints
            nv = dict(vcost)
            for u, c in chosen.items():
                for w in self.g.adj[u]:
                    if w in rest and ecost.ecost:
                        row = list(nv[w])
                        for b in range(self.H.size):
                            row[b] += ecost.edge_cost(u, w, c, b)
                        nv[w] = row
            limit = best[0][0] if best[0] is not None else ub
            if limit is not None:
                lb = self.lower_bound(rest, lists, nv)
                if lb is None or base + lb >= limit:
                    return
            sub = self.solve(rest, lists, nv, ecost, depth + 1, None if limit is None else limit - base)
            if sub is None or sub is ABOVE:
                return
            val = base + sub[0]
            if best[0] is None or val < best[0][0]:
                wit = dict(sub[1])
                wit.update(chosen)
                best[0] = (val, wit)
            return
        for col in enumerate_clique_colorings(cliques[i], self.H, lists):
            self.stats.tick()
            trial = list(lists)
            if not self.restrict(trial, comp, col):
                continue
            chosen.update(col)
            self._color(comp, cliques, i + 1, trial, chosen, vcost, ecost, depth, best, ub)
            for v in col:
                del chosen[v]

    def branch_and_bound(self, comp, lists, vcost, ecost, ub=None):
        """Exact minimum over the component, vertices in index order, colors
        in index order; the first optimum found is kept.

        Coloring a vertex narrows the lists of its later neighbours, and the
        bound adds the cheapest remaining color of every uncolored vertex.
        Only values below ``ub`` are searched for.
        """
        verts = sorted(comp)
        H = self.H
        n = len(verts)
        pos = {v: i for i, v in enumerate(verts)}
        earlier = [[w for w in self.g.adj[v] if w in pos and pos[w] < pos[v]] for v in verts]
        later = [[pos[w] for w in self.g.adj[v] if w in pos and pos[w] > pos[v]] for v in verts]
        costs = [vcost[v] for v in verts]

        def cheapest(i: int, mask: int):
            return min((costs[i][c] for c in iter_bits(mask)), default=None)

        doms = [lists[v] for v in verts]
        mins = [cheapest(i, doms[i]) for i in range(n)]
        if any(m is None for m in mins):
            return None
        f: dict[int, int] = {}
        best: list = [None, None]

        def rec(i: int, acc: int, doms: list[int], mins: list):
            self.stats.tick()
            limit = best[0] if best[0] is not None else ub
            if limit is not None and acc + sum(mins[i:]) >= limit:
                return
            if i == n:
                best[0], best[1] = acc, dict(f)
                return
            v = verts[i]
            for c in iter_bits(doms[i]):
                step = costs[i][c]
                for w in earlier[i]:
                    step += ecost.edge_cost(v, w, c, f[w])
                nd, nm = doms, mins
                ok = True
                for j in later[i]:
                    m = doms[j] & H.adj[c]
                    if m != doms[j]:
                        if nd is doms:
                            nd, nm = list(doms), list(mins)
                        if not m:
                            ok = False
                            break
                        nd[j] = m
                        nm[j] = cheapest(j, m)
                if not ok:
                    continue
                f[v] = c
                rec(i + 1, acc + step, nd, nm)
                del f[v]

        rec(0, 0, doms, mins)
        if best[0] is None:
            return None if ub is None else ABOVE
        return best[0], best[1]


def _integer_tables(costs: CostTables, with_edges: bool) -> tuple[CostTables, int]:
    """Costs times the common denominator, so the search adds plain ints."""
    qs = [Fraction(q) for row in costs.vcost for q in row]
    ecost = costs.ecost if with_edges else None
    for table in (ecost or {}).values():
        qs += [Fraction(q) for q in table.values()]
    scale = math.lcm(*(q.denominator for q in qs)) if qs else 1

    def up(q) -> int:
        return int(Fraction(q) * scale)

    vcost = [[up(q) for q in row] for row in costs.vcost]
    etab = {e: {ab: up(q) for ab, q in t.items()} for e, t in ecost.items()} if ecost else None
    return CostTables(vcost, etab, costs.budget), scale


def _run(g, H, costs, provider, cfg, stats, with_edges: bool, method: str, lists=None) -> MinCostResult:
    cfg = cfg or DEFAULT
    stats = stats if stats is not None else Stats.with_limits(cfg.node_limit, cfg.time_limit)
    if provider is None:
        def provider(gr, verts):
            return fallback_clique_separator(gr, verts, cfg.delta)
    if len(costs.vcost) != g.n or any(len(r) != H.size for r in costs.vcost):
        raise ValueError("vertex cost table must cover V(G) x V(H)")
    tables, scale = _integer_tables(costs, with_edges)
    lists = list(lists) if lists is not None else [H.full_mask] * g.n
    engine = _Weighted(g, H, cfg, provider, stats)
    try:
        if not propagate(g, H, lists, set(range(g.n)), range(g.n)):
            return MinCostResult(None, None, stats, method)
        vcost = {v: tables.vcost[v] for v in range(g.n)}
        res = engine.solve(set(range(g.n)), lists, vcost, tables, 0)
    except SearchTimeout:
        return MinCostResult(None, None, stats, method, timed_out=True)
    if res is None:
        return MinCostResult(None, None, stats, method)
    value, wit = res
    return MinCostResult(Fraction(value, scale), tuple(wit[v] for v in range(g.n)), stats, method)


def solve_mincost(
    g: Graph,
    H: TargetGraph,
    costs: CostTables,
    sep_provider: SeparatorProvider | None = None,
    cfg: RunConfig | None = None,
    stats: Stats | None = None,
    lists: Sequence[int] | None = None,
) -> MinCostResult:
    """Minimum of the vertex costs over all homomorphisms G -> H
    (respecting ``lists`` when given)."""
    if costs.ecost:
        raise ValueError("edge costs given; use solve_whom")
    return _run(g, H, costs, sep_provider, cfg, stats, False, "mincost", lists)


def solve_whom(
    g: Graph,
    H: TargetGraph,
    costs: CostTables,
    sep_provider: SeparatorProvider | None = None,
    cfg: RunConfig | None = None,
    stats: Stats | None = None,
    lists: Sequence[int] | None = None,
) -> MinCostResult:
    """Minimum of the vertex plus edge costs over all homomorphisms G -> H
    (respecting ``lists`` when given)."""
    return _run(g, H, costs, sep_provider, cfg, stats, True, "whom", lists)


# ------------------------------------------------------------------ encoders


def vc_target() -> TargetGraph:
    """Two colors; 2 is looped and adjacent to 1, 1 has no loop."""
    return TargetGraph.from_edges(["1", "2"], [("1", "2"), ("2", "2")])


def encode_vertex_cover(g: Graph) -> tuple[Graph, TargetGraph, CostTables]:
    """Color 2 = in the cover (cost 1); color-1 vertices form an independent set."""
    H = vc_target()
    vcost = [[ZERO, Fraction(1)] for _ in range(g.n)]
    return g, H, CostTables(vcost)


def encode_max_cut(
    g: Graph, weights: Mapping[tuple[int, int], Fraction] | None = None
) -> tuple[Graph, TargetGraph, CostTables]:
    """Reflexive K2; an uncut edge pays its weight, a cut edge pays nothing."""
    H = TargetGraph.from_edges(["1", "2"], [("1", "1"), ("1", "2"), ("2", "2")])
    ecost = {}
    for u, v in g.edges():
        w = Fraction(1)
        if weights is not None:
            w = Fraction(weights.get((u, v), weights.get((v, u), 1)))
        ecost[(u, v)] = {(0, 0): w, (1, 1): w, (0, 1): ZERO, (1, 0): ZERO}
    vcost = [[ZERO, ZERO] for _ in range(g.n)]
    return g, H, CostTables(vcost, ecost)


# ------------------------------------------------------- triangle generator


def c4_target() -> TargetGraph:
    """Reflexive 4-cycle 1-2-3-4-1."""
    labels = ["1", "2", "3", "4"]
    edges = [("1", "2"), ("2", "3"), ("3", "4"), ("4", "1")] + [(a, a) for a in labels]
    return TargetGraph.from_edges(labels, edges)


# per gadget: x, u, w, y on the path x-u-w-y; a z per edge has list {2, 3}
VC_GADGET_LISTS = ("12", "34", "12", "34")
VC_EDGE_LIST = "23"
TIP_SPACING = 8


@dataclass(frozen=True)
class MinCostInstance:
    graph: Graph
    target: TargetGraph
    costs: CostTables


def _vc_gadget(X: Fraction, Y: Fraction, Y2: Fraction):
    """x hangs from the tip (X, Y), y from (X + 8, Y2); u and w close the
    path below them, meeting at one corner."""
    from .geometry import Point

    P = Point
    bottom = P(X + 4, Y - 10)
    x = (P(X, Y), P(X - 2, Y - 4), P(X + 2, Y - 4))
    u = (P(X - 2, Y - 4), P(X + 2, Y - 4), bottom)
    y = (P(X + 8, Y2), P(X + 6, Y2 - 4), P(X + 10, Y2 - 4))
    w = (P(X + 6, Y2 - 4), P(X + 10, Y2 - 4), bottom)
    return [x, u, w, y]


def _tri(pts):
    from .geometry import Point, Triangle

    a, b, c = pts
    return Triangle(a, b, c, anchor=Point((a.x + b.x + c.x) / 3, (a.y + b.y + c.y) / 3))


def gen_mchom_vc_triangles(g: Graph, k) -> tuple["Scene", MinCostInstance, Fraction]:
    """Triangles whose min-cost homomorphism to the reflexive C4 stays within
    ``k`` iff g has a vertex cover of size at most ``k``.

    Vertex v of g gets the path x-u-w-y; its two list homomorphisms send
    (x, y) to (1, 4) or to (2, 3), the latter meaning "v is in the cover" and
    costing 1 on x.  Edge uv (u < v) gets a triangle z touching x_u and y_v:
    x_u = 1 forces z = 2 and then y_v = 3.  Colors outside a list cost k + 1.

    The x and y tips sit on a flat convex chain, the gadgets hang below it
    and each z spans its two tips and a common apex far above, so a z meets
    the gadgets only at its tips and all z's meet at the apex.  Returns the
    scene, the instance (budget k) and an outer radius for which every object
    passes the fat check.
    """
    from .geometry import Point, Scene

    k = Fraction(k)
    H = c4_target()
    N = g.n
    edges = sorted(g.edges())
    M = len(edges)
    s = Fraction(TIP_SPACING)
    c = Fraction(1, 2 * max(N, 1))

    def tip(i: int) -> Point:
        return Point(i * s, c * i * i)

    objs = []
    gedges: list[tuple[int, int]] = []
    for v in range(N):
        X, Y = tip(2 * v)
        Y2 = tip(2 * v + 1).y
        objs += [_tri(t) for t in _vc_gadget(X, Y, Y2)]
        b = 4 * v
        gedges += [(b, b + 1), (b + 1, b + 2), (b + 2, b + 3)]
    if M:
        top = max(tip(i).y for i in range(2 * N))
        apex = Point((2 * N - 1) * s / 2, top + 8 * 2 * N * s)
        for j, (u, v) in enumerate(edges):
            objs.append(_tri((tip(2 * u), tip(2 * v + 1), apex)))
            gedges += [(4 * u, 4 * N + j), (4 * v + 3, 4 * N + j)]
        gedges += list(itertools.combinations(range(4 * N, 4 * N + M), 2))
    graph = Graph.from_edges(4 * N + M, gedges)

    big = k + 1
    lists = [VC_GADGET_LISTS[i % 4] for i in range(4 * N)] + [VC_EDGE_LIST] * M
    vcost = []
    for i, allowed in enumerate(lists):
        row = [ZERO if H.labels[a] in allowed else big for a in range(H.size)]
        if i < 4 * N and i % 4 == 0:
            row[H.index("2")] += 1
        vcost.append(row)
    inst = MinCostInstance(graph, H, CostTables(vcost, None, k))

    r2 = max(
        ((p.x - o.anchor.x) ** 2 + (p.y - o.anchor.y) ** 2 for o in objs for p in (o.a, o.b, o.c)),
        default=ZERO,
    )
    r_max = Fraction(math.isqrt(math.ceil(r2)) + 1)
    return Scene(tuple(objs)), inst, r_max
