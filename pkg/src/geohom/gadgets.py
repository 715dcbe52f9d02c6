"""Gadget verification and consistent instances over the bipartite associate."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, bipartition, components
from .solver.bruteforce import enumerate_homomorphisms
from .solver.instance import ListInstance
from .target import BipartiteAssociate, TargetGraph, iter_bits

OR3_PATTERNS = ("aaa", "aab", "aba", "baa", "abb", "bab", "bba")


@dataclass(frozen=True)
class Gadget:
    """An instance fragment F with lists (label sets) and interface vertices."""

    graph: Graph
    lists: tuple[frozenset[str], ...]
    interface: tuple[int, ...]

    def __post_init__(self):
        if len(self.lists) != self.graph.n:
            raise ValueError("one list per gadget vertex required")
        if len(set(self.interface)) != len(self.interface):
            raise ValueError("interface vertices must be distinct")
        if any(not 0 <= v < self.graph.n for v in self.interface):
            raise ValueError("interface vertex outside the gadget")

    def instance(self, H: TargetGraph) -> ListInstance:
        return ListInstance.from_labels(H, self.graph, self.lists)

    def projections(self, H: TargetGraph) -> set[tuple[str, ...]]:
        """Colors seen on the interface over all list homomorphisms of F."""
        inst = self.instance(H)
        return {
            tuple(H.labels[f[v]] for v in self.interface) for f in enumerate_homomorphisms(inst)
        }


def verify_or3_gadget(g: Gadget, H: TargetGraph, a: str, b: str) -> bool:
    """Interface projection equals every a/b triple except bbb."""
    if len(g.interface) != 3:
        raise ValueError("OR3 gadget needs three interface vertices")
    if any(g.lists[v] != {a, b} for v in g.interface):
        raise ValueError("interface lists must equal {a, b}")
    want = {tuple({"a": a, "b": b}[ch] for ch in p) for p in OR3_PATTERNS}
    return g.projections(H) == want


def verify_switch_gadget(g: Gadget, H: TargetGraph, a: str, b: str, c: str, d: str) -> bool:
    """Interface projection on (p, q) equals exactly {(a, c), (b, d)}."""
    if len(g.interface) != 2:
        raise ValueError("switch gadget needs two interface vertices")
    p, q = g.interface
    if g.lists[p] != {a, b} or g.lists[q] != {c, d}:
        raise ValueError("interface lists must be {a, b} and {c, d}")
    return g.projections(H) == {(a, c), (b, d)}


def _side_masks(assoc: BipartiteAssociate) -> tuple[int, int]:
    return assoc.x_mask, assoc.y_mask


def consistent_orientation(
    g: Graph, lstar: Sequence[int], assoc: BipartiteAssociate
) -> list[int] | None:
    """Per-vertex side (0 = X, 1 = Y) witnessing consistency, or None.

    Each component of G is tried with both orientations of its bipartition.
    """
    side = bipartition(g)
    if side is None:
        return None
    xm, ym = _side_masks(assoc)
    out = [0] * g.n
    for comp in components(g):
        for flip in (0, 1):
            ok = True
            for v in comp:
                s = side[v] ^ flip
                if lstar[v] & ~(xm if s == 0 else ym):
                    ok = False
                    break
            if ok:
                for v in comp:
                    out[v] = side[v] ^ flip
                break
        else:
            return None
    return out


def is_consistent_instance(g: Graph, lstar: Sequence[int], assoc: BipartiteAssociate) -> bool:
    return consistent_orientation(g, lstar, assoc) is not None


def project_consistent(
    g: Graph, lstar: Sequence[int], assoc: BipartiteAssociate, H: TargetGraph
) -> list[int]:
    """Lists over V(H): a is kept when a' or a'' is in the list over H*."""
    if not is_consistent_instance(g, lstar, assoc):
        raise ValueError("instance is not consistent")
    hs = assoc.hstar
    out = []
    for m in lstar:
        mask = 0
        for i in iter_bits(m):
            base, _ = assoc.origin[hs.labels[i]]
            mask |= 1 << H.index(base)
        out.append(mask)
    return out
