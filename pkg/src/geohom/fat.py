"""Solver for fat, similarly sized scenes.

Small-area pieces are split by guessing, per cell-clique, which vertices go
to irreflexive colors and which reflexive clique takes the rest; what is left
has reflexive-clique lists and is solved by 2-SAT when lists have at most two
colors.  Large pieces are cut by a grid line whose crossing objects are
colored exhaustively.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .config import DEFAULT, RunConfig
from .geometry import Scene, area, cell_cliques, intersection_graph, validate_fat_similarly_sized
from .graph import components
from .separators import area_is_small, line_separator
from .solver.bruteforce import search_lists
from .solver.instance import ListInstance, SearchTimeout, SolveResult, Stats
from .solver.preprocess import reduce_lists
from .solver.propagate import assign
from .solver.twosat import solve_2sat
from .target import TargetGraph, iter_bits, maximal_reflexive_cliques


def is_rc_instance(inst: ListInstance) -> bool:
    """Every list is a set of looped, pairwise adjacent colors."""
    H = inst.target
    refl = H.reflexive_mask
    for m in inst.lists:
        if m & ~refl:
            return False
        for a, b in itertools.combinations(iter_bits(m), 2):
            if not H.adjacent(a, b):
                return False
    return True


@dataclass(frozen=True)
class RcBranch:
    instance: ListInstance
    kept: tuple[int, ...]
    forced: dict[int, int]

    def lift(self, witness: Sequence[int]) -> dict[int, int]:
        out = dict(self.forced)
        out.update(zip(self.kept, witness))
        return out


def _cell_options(cell, H: TargetGraph, cliques: list[int]):
    """(vertex -> irreflexive color, reflexive clique mask) choices for one cell."""
    irr = [c for c in range(H.size) if not H.has_loop(c)]
    for k in range(min(len(cell), len(irr)) + 1):
        for chosen in itertools.combinations(cell, k):
            rest = len(cell) - k
            for image in itertools.permutations(irr, k):
                guess = dict(zip(chosen, image))
                if rest == 0:
                    yield guess, 0
                else:
                    for K in cliques:
                        yield guess, K


def reduce_to_rc(
    inst: ListInstance, cells: Sequence[Sequence[int]], stats: Stats | None = None
) -> Iterator[RcBranch]:
    """Stream of reflexive-clique-list instances whose disjunction is ``inst``.

    For each cell: a set of at most |I(H)| vertices gets distinct irreflexive
    colors, which are pushed into neighbouring lists before the vertices are
    deleted; the other vertices of the cell keep only colors of one maximal
    reflexive clique.  Branches where a list empties are skipped.
    """
    H = inst.target
    g = inst.graph
    cliques = maximal_reflexive_cliques(H)
    cells = [sorted(c) for c in cells]
    covered = sorted(v for c in cells for v in c)
    if covered != list(range(inst.n)):
        raise ValueError("cells must partition the vertex set")

    def rec(i: int, lists: list[int], removed: dict[int, int]) -> Iterator[RcBranch]:
        if i == len(cells):
            kept = tuple(v for v in range(inst.n) if v not in removed)
            sub, _ = g.induced(kept)
            yield RcBranch(ListInstance(H, sub, tuple(lists[v] for v in kept)), kept, dict(removed))
            return
        cell = cells[i]
        for guess, K in _cell_options(cell, H, cliques):
            if stats is not None:
                stats.tick()
            trial = list(lists)
            ok = True
            for v, c in guess.items():
                if not (trial[v] >> c) & 1:
                    ok = False
                    break
                trial[v] = 1 << c
                for w in g.adj[v]:
                    if w not in removed:
                        trial[w] &= H.adj[c]
            if not ok:
                continue
            for v in cell:
                if v not in guess:
                    trial[v] &= K
            live = [v for v in range(inst.n) if v not in removed and v not in guess]
            if any(trial[v] == 0 for v in live):
                continue
            # a guessed vertex must still be compatible with earlier guesses
            if any(not (trial[v] >> c) & 1 for v, c in guess.items()):
                continue
            nxt = dict(removed)
            nxt.update(guess)
            yield from rec(i + 1, trial, nxt)

    yield from rec(0, list(inst.lists), {})


def solve_rc(inst: ListInstance, stats: Stats | None = None) -> SolveResult:
    """2-SAT when every list has at most two colors, backtracking otherwise."""
    if not is_rc_instance(inst):
        raise ValueError("not a reflexive-clique-list instance")
    stats = stats if stats is not None else Stats()
    if inst.max_list_size() <= 2:
        res = solve_2sat(inst, stats)
        res.method = "rc-twosat"
        return res
    try:
        w = search_lists(inst, stats)
    except SearchTimeout:
        return SolveResult(None, None, stats, "rc-brute")
    return SolveResult(w is not None, w, stats, "rc-brute")


class _FatSolver:
    def __init__(self, inst: ListInstance, scene: Scene, cfg: RunConfig, stats: Stats):
        self.inst = inst
        self.g = inst.graph
        self.H = inst.target
        self.scene = scene
        self.cfg = cfg
        self.stats = stats
        self.memo: dict = {}
        self.levels: list[tuple[int, int]] = []  # (depth, area) of each line cut

    def solve(self, active: set[int], lists: list[int], depth: int) -> dict[int, int] | None:
        self.stats.tick()
        self.stats.depth(depth)
        active = set(active)
        forced = reduce_lists(self.g, self.H, lists, active)
        if forced is None:
            return None
        out = dict(forced)
        for comp in components(self.g, active):
            sub = self.component(comp, lists, depth)
            if sub is None:
                return None
            out.update(sub)
        return out

    def component(self, comp: list[int], lists: list[int], depth: int) -> dict[int, int] | None:
        key = (tuple(comp), tuple(lists[v] for v in comp))
        if key in self.memo:
            hit = self.memo[key]
            return None if hit is None else dict(hit)
        a = area(self.scene.objects[v] for v in comp)
        if area_is_small(a, len(comp), self.cfg.c_area):
            hit = self.rc_path(comp, lists)
        else:
            sep = line_separator(self.scene, self.cfg.c_area, comp, self.g)
            if sep.small_area:
                hit = self.rc_path(comp, lists)
            else:
                self.stats.separators += 1
                self.levels.append((depth, a))
                hit = self.color_crossing(
                    set(comp), sorted(sep.crossing), 0, lists, {}, sep, depth
                )
        self.memo[key] = None if hit is None else dict(hit)
        return hit

    def rc_path(self, comp: list[int], lists: list[int]) -> dict[int, int] | None:
        sub, order = self.g.induced(comp)
        local = ListInstance(self.H, sub, tuple(lists[v] for v in order))
        pos = {v: i for i, v in enumerate(order)}
        cells = [[pos[v] for v in cell] for cell in cell_cliques(self.scene, comp)]
        for branch in reduce_to_rc(local, cells, self.stats):
            res = solve_rc(branch.instance, self.stats)
            if res.answer is None:
                raise SearchTimeout("node limit")
            if res.answer:
                lifted = branch.lift(res.witness)
                return {order[i]: c for i, c in lifted.items()}
        return None

    def color_crossing(self, comp, S, i, lists, chosen, sep, depth):
        if i == len(S):
            out = dict(chosen)
            for side in (sep.left, sep.right):
                if not side:
                    continue
                hit = self.solve(set(side), lists, depth + 1)
                if hit is None:
                    return None
                out.update(hit)
            return out
        v = S[i]
        for c in iter_bits(lists[v]):
            self.stats.tick()
            trial = list(lists)
            if not assign(self.g, self.H, trial, comp, {v: c}):
                continue
            chosen[v] = c
            hit = self.color_crossing(comp, S, i + 1, trial, chosen, sep, depth)
            del chosen[v]
            if hit is not None:
                return hit
        return None


def check_scene(inst: ListInstance, scene: Scene, cfg: RunConfig) -> None:
    if len(scene) != inst.n:
        raise ValueError("scene and instance disagree on the number of vertices")
    if intersection_graph(scene) != inst.graph:
        raise ValueError("scene intersection graph differs from the instance graph")
    report = validate_fat_similarly_sized(scene, cfg.r_max)
    if not report:
        raise ValueError(f"scene is not fat and similarly sized: {report.failures[:3]}")


def solve_fat(
    inst: ListInstance, scene: Scene, cfg: RunConfig | None = None, stats: Stats | None = None
) -> SolveResult:
    cfg = cfg or DEFAULT
    stats = stats if stats is not None else Stats.with_limits(cfg.node_limit, cfg.time_limit)
    check_scene(inst, scene, cfg)
    solver = _FatSolver(inst, scene, cfg, stats)
    try:
        hit = solver.solve(set(range(inst.n)), list(inst.lists), 0)
    except SearchTimeout:
        return SolveResult(None, None, stats, "fat")
    if hit is None:
        return SolveResult(False, None, stats, "fat")
    return SolveResult(True, tuple(hit[v] for v in range(inst.n)), stats, "fat")

