"""Arc consistency over a vertex subset, shared by the recursive solvers.

Lists are full-length (indexed by original vertex ids); only vertices in
``active`` take part.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable

from ..graph import Graph
from ..target import TargetGraph


def support(H: TargetGraph, mask: int) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= H.adj[low.bit_length() - 1]
        mask ^= low
    return out


def propagate(
    g: Graph, H: TargetGraph, lists: list[int], active, seeds: Iterable[int]
) -> bool:
    """Shrink lists in place until every arc inside ``active`` is consistent.

    Returns False as soon as a list empties.
    """
    queue = deque()
    inq = set()
    for v in seeds:
        if v not in inq:
            inq.add(v)
            queue.append(v)
    while queue:
        u = queue.popleft()
        inq.discard(u)
        sup = support(H, lists[u])
        for w in sorted(g.adj[u]):
            if w not in active:
                continue
            old = lists[w]
            new = old & sup
            if new != old:
                if not new:
                    return False
                lists[w] = new
                if w not in inq:
                    inq.add(w)
                    queue.append(w)
    return True


def assign(
    g: Graph, H: TargetGraph, lists: list[int], active, coloring: dict[int, int]
) -> bool:
    """Fix ``coloring`` (vertex -> color index) and propagate into ``active``.

    Colored vertices must belong to ``active``; returns False on a wipe-out.
    """
    for v, c in coloring.items():
        if not (lists[v] >> c) & 1:
            return False
        lists[v] = 1 << c
    return propagate(g, H, lists, active, sorted(coloring))
