"""List colorings of a clique of G.

In a clique, irreflexive colors are used at most once each (no loops), so at
most |I(H)| vertices land in I(H); everything else goes to a reflexive
clique of H.  The enumeration follows that shape directly.
"""
from __future__ import annotations

import itertools
from typing import Iterator, Sequence

from ..target import TargetGraph, iter_bits


def enumerate_clique_colorings(
    clique: Sequence[int], H: TargetGraph, lists: Sequence[int]
) -> Iterator[dict[int, int]]:
    """Yield every list-respecting coloring of ``clique`` exactly once.

    ``lists`` is indexed by vertex.  Order: by the set of vertices sent to
    I(H) (smaller sets first, then lexicographic), then by the injection,
    then by the reflexive colors of the rest in lexicographic order.
    """
    verts = sorted(clique)
    irr = [c for c in range(H.size) if not H.has_loop(c)]
    refl_mask = H.reflexive_mask
    for k in range(min(len(verts), len(irr)) + 1):
        for chosen in itertools.combinations(verts, k):
            rest = [v for v in verts if v not in chosen]
            for image in itertools.permutations(irr, k):
                if not all((lists[v] >> c) & 1 for v, c in zip(chosen, image)):
                    continue
                if not all(H.adjacent(a, b) for a, b in itertools.combinations(image, 2)):
                    continue
                base = dict(zip(chosen, image))
                # reflexive colors must be adjacent to every injected color
                allowed = refl_mask
                for c in image:
                    allowed &= H.adj[c]
                yield from _reflexive_rest(H, lists, rest, allowed, base)


def _reflexive_rest(H, lists, rest, allowed, base):
    out = dict(base)

    def rec(i: int, allowed: int):
        if i == len(rest):
            yield dict(out)
            return
        v = rest[i]
        for c in iter_bits(lists[v] & allowed):
            out[v] = c
            # the next vertices must stay inside N(c); c itself is looped
            yield from rec(i + 1, allowed & H.adj[c])
        out.pop(v, None)

    yield from rec(0, allowed)

