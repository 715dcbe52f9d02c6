"""Simple loopless instance graphs on vertices 0..n-1."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[frozenset[int], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"instance graphs are loopless (vertex {u})")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u} {v} out of range for n={n}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(frozenset(s) for s in nbrs))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, tuple(frozenset() for _ in range(n)))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled 0..k-1; returns (subgraph, old ids)."""
        order = list(vertices)
        pos = {v: i for i, v in enumerate(order)}
        adj = tuple(frozenset(pos[w] for w in self.adj[v] if w in pos) for v in order)
        return Graph(len(order), adj), order

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(vs[j] in self.adj[vs[i]] for i in range(len(vs)) for j in range(i + 1, len(vs)))

    def csr(self, vertices: Sequence[int] | None = None) -> tuple[list[int], list[int], list[int]]:
        """CSR arrays of the subgraph induced by ``vertices`` (local ids)."""
        order = list(range(self.n)) if vertices is None else list(vertices)
        pos = {v: i for i, v in enumerate(order)}
        indptr = [0]
        indices: list[int] = []
        for v in order:
            indices.extend(sorted(pos[w] for w in self.adj[v] if w in pos))
            indptr.append(len(indices))
        return indptr, indices, order


def components(g: Graph, vertices: Iterable[int] | None = None) -> list[list[int]]:
    """Connected components of the subgraph induced by ``vertices``.

    Each component is sorted; components are ordered by smallest vertex.
    """
    allowed = set(range(g.n)) if vertices is None else set(vertices)
    seen: set[int] = set()
    out = []
    for s in sorted(allowed):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        out.append(sorted(comp))
    return out


def bipartition(g: Graph) -> list[int] | None:
    """A proper 2-colouring (0/1 per vertex), or None if g has an odd cycle.

    Within every component the smallest vertex gets side 0.
    """
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] != -1:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if side[w] == -1:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    return None
    return side
