"""Divide and conquer over clique-based separators.

Each clique of the separator is colored with the clique enumeration, the
colors are pushed into neighbouring lists, and the components left over are
solved independently.  Small pieces go to the backtracking search.
"""
from __future__ import annotations

from ..config import DEFAULT, RunConfig
from ..graph import components
from ..separators import CliqueSeparator, SeparatorProvider, fallback_clique_separator
from .bruteforce import search_lists
from .cliques import enumerate_clique_colorings
from .instance import ListInstance, SearchTimeout, SolveResult, Stats
from .preprocess import reduce_lists
from .propagate import assign


class _CliqueSolver:
    def __init__(self, inst: ListInstance, provider: SeparatorProvider, cfg: RunConfig, stats: Stats):
        self.inst = inst
        self.g = inst.graph
        self.H = inst.target
        self.provider = provider
        self.cfg = cfg
        self.stats = stats

    def solve(self, active: set[int], lists: list[int], depth: int) -> dict[int, int] | None:
        self.stats.tick()
        self.stats.depth(depth)
        active = set(active)
        forced = reduce_lists(self.g, self.H, lists, active)
        if forced is None:
            return None
        out = dict(forced)
        for comp in components(self.g, active):
            sub = self.connected(comp, lists, depth)
            if sub is None:
                return None
            out.update(sub)
        return out

    def brute(self, comp: list[int], lists: list[int]) -> dict[int, int] | None:
        sub, order = self.g.induced(comp)
        w = search_lists(ListInstance(self.H, sub, tuple(lists[v] for v in order)), self.stats)
        return None if w is None else dict(zip(order, w))

    def connected(self, comp: list[int], lists: list[int], depth: int) -> dict[int, int] | None:
        if len(comp) <= self.cfg.base_n:
            return self.brute(comp, lists)
        sep = self.provider(self.g, comp)
        if sep is None or not sep.cliques or not sep.check(self.g, comp):
            return self.brute(comp, lists)
        self.stats.separators += 1
        cset = set(comp)
        return self._color(cset, sep.cliques, 0, lists, {}, depth)

    def _color(self, comp, cliques, i, lists, chosen, depth):
        if i == len(cliques):
            rest = comp - set(chosen)
            hit = self.solve(rest, lists, depth + 1)
            if hit is not None:
                hit.update(chosen)
            return hit
        for col in enumerate_clique_colorings(cliques[i], self.H, lists):
            self.stats.tick()
            trial = list(lists)
            if not assign(self.g, self.H, trial, comp, col):
                continue
            chosen.update(col)
            hit = self._color(comp, cliques, i + 1, trial, chosen, depth)
            for v in col:
                del chosen[v]
            if hit is not None:
                return hit
        return None


def _default_provider(cfg: RunConfig) -> SeparatorProvider:
    def provider(g, vertices) -> CliqueSeparator | None:
        return fallback_clique_separator(g, vertices, cfg.delta)

    return provider


def solve_cliquebased(
    inst: ListInstance,
    sep_provider: SeparatorProvider | None = None,
    cfg: RunConfig | None = None,
    stats: Stats | None = None,
) -> SolveResult:
    cfg = cfg or DEFAULT
    stats = stats if stats is not None else Stats.with_limits(cfg.node_limit, cfg.time_limit)
    provider = sep_provider or _default_provider(cfg)
    solver = _CliqueSolver(inst, provider, cfg, stats)
    try:
        hit = solver.solve(set(range(inst.n)), list(inst.lists), 0)
    except SearchTimeout:
        return SolveResult(None, None, stats, "cliquebased")
    if hit is None:
        return SolveResult(False, None, stats, "cliquebased")
    return SolveResult(True, tuple(hit[v] for v in range(inst.n)), stats, "cliquebased")
