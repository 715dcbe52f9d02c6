"""Instances whose lists have at most two colors, via 2-SAT.

Vertex v gets one boolean: false picks the lower color index of L(v), true
the higher one.  Each edge forbids the pairs of choices whose colors are not
adjacent in H.
"""
from __future__ import annotations

from ..target import iter_bits, popcount
from .instance import ListInstance, SolveResult, Stats


class TwoSat:
    """Clauses over variables 0..n-1; literal 2*i is x_i, 2*i+1 is not x_i."""

    def __init__(self, n: int):
        self.n = n
        self.imp: list[list[int]] = [[] for _ in range(2 * n)]

    @staticmethod
    def lit(var: int, value: bool) -> int:
        return 2 * var if value else 2 * var + 1

    def clause(self, a: int, b: int) -> None:
        """Add (a or b)."""
        self.imp[a ^ 1].append(b)
        self.imp[b ^ 1].append(a)

    def solve(self) -> list[bool] | None:
        comp = _tarjan(self.imp)
        model = []
        for i in range(self.n):
            t, f = comp[2 * i], comp[2 * i + 1]
            if t == f:
                return None
            # Tarjan numbers components in reverse topological order
            model.append(t < f)
        return model


def _tarjan(adj: list[list[int]]) -> list[int]:
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    onstack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        onstack[root] = True
        while work:
            v, i = work[-1]
            if i < len(adj[v]):
                work[-1] = (v, i + 1)
                w = adj[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    onstack[w] = True
                    work.append((w, 0))
                elif onstack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    onstack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def solve_2sat(inst: ListInstance, stats: Stats | None = None) -> SolveResult:
    stats = stats if stats is not None else Stats()
    if any(popcount(m) > 2 for m in inst.lists):
        raise ValueError("2-SAT needs every list to have at most two colors")
    if any(m == 0 for m in inst.lists):
        return SolveResult(False, None, stats, "twosat")
    H = inst.target
    options = [list(iter_bits(m)) for m in inst.lists]
    sat = TwoSat(inst.n)
    for v, opts in enumerate(options):
        if len(opts) == 1:
            sat.clause(sat.lit(v, False), sat.lit(v, False))
    for u, v in inst.graph.edges():
        for i, a in enumerate(options[u]):
            for j, b in enumerate(options[v]):
                if not H.adjacent(a, b):
                    sat.clause(sat.lit(u, i == 0), sat.lit(v, j == 0))
    stats.tick()
    model = sat.solve()
    if model is None:
        return SolveResult(False, None, stats, "twosat")
    witness = tuple(options[v][1] if model[v] else options[v][0] for v in range(inst.n))
    return SolveResult(True, witness, stats, "twosat")
