"""Exact backtracking search; the reference every other solver is tested against."""
from __future__ import annotations

from typing import Iterator

from .. import kernels
from ..target import iter_bits
from .instance import ListInstance, SearchTimeout, SolveResult, Stats


def search_lists(inst: ListInstance, stats: Stats) -> tuple[int, ...] | None:
    """Run the kernel search, charging its nodes to ``stats``.

    Raises SearchTimeout if the node budget runs out.
    """
    indptr, indices, _ = inst.graph.csr()
    status, witness, nodes = kernels.search(
        indptr, indices, inst.target.adj, list(inst.lists), stats.remaining_nodes()
    )
    stats.tick(nodes)
    if status == kernels.LIMIT:
        raise SearchTimeout("node limit")
    return None if status == kernels.NOT_FOUND else tuple(witness)


def solve_bruteforce(inst: ListInstance, stats: Stats | None = None) -> SolveResult:
    """Backtracking with MRV vertex order and arc consistency at every node."""
    stats = stats if stats is not None else Stats()
    try:
        witness = search_lists(inst, stats)
    except SearchTimeout:
        return SolveResult(None, None, stats, "brute")
    stats.depth(inst.n)
    return SolveResult(witness is not None, witness, stats, "brute")


def enumerate_homomorphisms(inst: ListInstance) -> Iterator[tuple[int, ...]]:
    """Every list homomorphism, in lexicographic order of color indices.

    Plain forward checking on vertex order 0..n-1; kept independent of the
    kernel so it can serve as a second opinion.
    """
    n = inst.n
    H = inst.target
    adj = inst.graph.adj
    f = [-1] * n

    def rec(v: int) -> Iterator[tuple[int, ...]]:
        if v == n:
            yield tuple(f)
            return
        for c in iter_bits(inst.lists[v]):
            if all(f[w] < 0 or H.adjacent(c, f[w]) for w in adj[v]):
                f[v] = c
                yield from rec(v + 1)
                f[v] = -1

    yield from rec(0)
