"""Reduction rules applied before and during branching.

Rules run in a fixed order until nothing changes:

1. make every list an incomparable set: drop ``a`` when some ``b`` in the
   same list has ``N(a)`` strictly inside ``N(b)``; for equal
   neighbourhoods the lexicographically smaller label goes;
2. arc consistency along the edges of G;
3. delete vertices whose list is a single color, recording that color.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..graph import Graph
from ..target import TargetGraph, iter_bits
from .instance import ListInstance
from .propagate import propagate


def dominated_colors(H: TargetGraph, mask: int) -> int:
    """Colors of ``mask`` removed by rule 1 (returned as a bitmask)."""
    drop = 0
    cols = list(iter_bits(mask))
    for a in cols:
        na = H.adj[a]
        for b in cols:
            if a == b:
                continue
            nb = H.adj[b]
            if na & nb != na:
                continue
            if na != nb or H.labels[a] < H.labels[b]:
                drop |= 1 << a
                break
    return drop


def reduce_lists(
    g: Graph, H: TargetGraph, lists: list[int], active: set[int]
) -> dict[int, int] | None:
    """Apply rules 1-3 in place over ``active``.

    Removed vertices leave ``active``; returns their forced colors, or None
    if some list became empty.
    """
    forced: dict[int, int] = {}
    for v in active:
        if not lists[v]:
            return None
    seeds = sorted(active)
    while True:
        before = {v: lists[v] for v in active}
        for v in sorted(active):
            drop = dominated_colors(H, lists[v])
            if drop:
                lists[v] &= ~drop
                seeds.append(v)
        if not propagate(g, H, lists, active, seeds):
            return None
        singles = [v for v in sorted(active) if lists[v] & (lists[v] - 1) == 0]
        for v in singles:
            forced[v] = lists[v].bit_length() - 1
            active.discard(v)
        # after full arc consistency, dropping a singleton never shrinks a
        # neighbour, so only list changes can re-enable rule 1
        if all(lists[v] == before[v] for v in active):
            return forced
        seeds = []


@dataclass
class Reduced:
    instance: ListInstance
    kept: list[int]
    forced: dict[int, int] = field(default_factory=dict)

    def lift(self, witness) -> tuple[int, ...]:
        """Combine a witness of the reduced instance with the forced part."""
        full = dict(self.forced)
        for i, v in enumerate(self.kept):
            full[v] = witness[i]
        return tuple(full[v] for v in sorted(full))


UNSAT = None


def preprocess(inst: ListInstance) -> Reduced | None:
    """Run the reduction rules; None means the instance is a NO."""
    lists = list(inst.lists)
    active = set(range(inst.n))
    forced = reduce_lists(inst.graph, inst.target, lists, active)
    if forced is None:
        return UNSAT
    kept = sorted(active)
    sub, _ = inst.graph.induced(kept)
    return Reduced(ListInstance(inst.target, sub, tuple(lists[v] for v in kept)), kept, forced)
