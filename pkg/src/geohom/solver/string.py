"""Divide and conquer for targets without a predator.

High-degree vertices are branched on a color pair that cannot both be used
on an edge; once degrees are low, a small balanced separator is colored
exhaustively and the remaining components are solved independently.
"""
from __future__ import annotations

from collections import Counter

from ..config import DEFAULT, RunConfig
from ..graph import components
from ..separators import balanced_vertex_separator
from ..target import find_predator_idx, iter_bits
from .instance import ListInstance, SearchTimeout, SolveResult, Stats
from .preprocess import reduce_lists
from .propagate import assign, propagate


class PredatorPresent(ValueError):
    code = "PREDATOR_PRESENT"

    def __init__(self, witness):
        super().__init__(f"PREDATOR_PRESENT: target contains predator {witness}")
        self.witness = witness


class _StringSolver:
    def __init__(self, inst: ListInstance, cfg: RunConfig, stats: Stats):
        self.g = inst.graph
        self.H = inst.target
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
            sub = self.connected(set(comp), lists, depth)
            if sub is None:
                return None
            out.update(sub)
        return out

    def _degree(self, v: int, comp: set[int]) -> int:
        return sum(1 for w in self.g.adj[v] if w in comp)

    def _branch_pair(self, v: int, comp: set[int], lists: list[int]) -> int | None:
        nbr_lists = Counter(lists[w] for w in self.g.adj[v] if w in comp)
        # most frequent neighbour list; ties go to the smaller mask
        target = min(nbr_lists, key=lambda m: (-nbr_lists[m], m))
        for a in iter_bits(lists[v]):
            for b in iter_bits(target):
                if not self.H.adjacent(a, b):
                    return a
        return None

    def _child(self, comp: set[int], lists: list[int], v: int, mask: int, depth: int):
        trial = list(lists)
        trial[v] = mask
        if not propagate(self.g, self.H, trial, comp, [v]):
            self.stats.tick()
            return None
        return self.solve(comp, trial, depth + 1)

    def connected(self, comp: set[int], lists: list[int], depth: int) -> dict[int, int] | None:
        n = len(comp)
        v = max(sorted(comp), key=lambda u: (self._degree(u, comp), -u))
        if self._degree(v, comp) >= self.cfg.deg_threshold(n):
            a = self._branch_pair(v, comp, lists)
            if a is not None:
                hit = self._child(comp, lists, v, 1 << a, depth)
                if hit is not None:
                    return hit
                return self._child(comp, lists, v, lists[v] & ~(1 << a), depth)
        m = sum(1 for u in comp for w in self.g.adj[u] if w in comp and u < w)
        sep = balanced_vertex_separator(self.g, self.cfg.delta, self.cfg.size_budget(m), comp)
        if sep:
            self.stats.separators += 1
            return self._color_separator(comp, sorted(sep), 0, lists, {}, depth)
        for c in iter_bits(lists[v]):
            hit = self._child(comp, lists, v, 1 << c, depth)
            if hit is not None:
                return hit
        return None

    def _color_separator(self, comp, sep, i, lists, chosen, depth):
        if i == len(sep):
            rest = comp - set(sep)
            hit = self.solve(rest, lists, depth + 1)
            if hit is None:
                return None
            hit.update(chosen)
            return hit
        v = sep[i]
        for c in iter_bits(lists[v]):
            trial = list(lists)
            if not assign(self.g, self.H, trial, comp, {v: c}):
                self.stats.tick()
                continue
            chosen[v] = c
            hit = self._color_separator(comp, sep, i + 1, trial, chosen, depth)
            del chosen[v]
            if hit is not None:
                return hit
        return None


def solve_string(inst: ListInstance, cfg: RunConfig | None = None, stats: Stats | None = None) -> SolveResult:
    """Exact solver for predator-free targets; raises PredatorPresent otherwise."""
    cfg = cfg or DEFAULT
    stats = stats if stats is not None else Stats.with_limits(cfg.node_limit, cfg.time_limit)
    pred = find_predator_idx(inst.target)
    if pred is not None:
        raise PredatorPresent(tuple(inst.target.labels[i] for i in pred))
    solver = _StringSolver(inst, cfg, stats)
    try:
        hit = solver.solve(set(range(inst.n)), list(inst.lists), 0)
    except SearchTimeout:
        return SolveResult(None, None, stats, "string")
    if hit is None:
        return SolveResult(False, None, stats, "string")
    return SolveResult(True, tuple(hit[v] for v in range(inst.n)), stats, "string")
