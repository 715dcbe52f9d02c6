"""Pure-Python twin of ``_ckernel.pyx``.

Both modules implement exactly the same search (same vertex order, same
value order, same FIFO propagation) so results and node counts agree.

Arguments use CSR adjacency (``indptr``, ``indices``) over local vertex ids,
``hadj[c]`` = neighbourhood bitmask of color c in H, and ``lists`` = one
color bitmask per vertex.
"""
from __future__ import annotations

from collections import deque

BACKEND = "python"

FOUND = 1
NOT_FOUND = 0
LIMIT = -1


def _support(hadj, mask):
    out = 0
    while mask:
        low = mask & -mask
        out |= hadj[low.bit_length() - 1]
        mask ^= low
    return out


def _propagate(indptr, indices, hadj, L, queue, inq):
    while queue:
        u = queue.popleft()
        inq[u] = False
        sup = _support(hadj, L[u])
        for k in range(indptr[u], indptr[u + 1]):
            w = indices[k]
            old = L[w]
            new = old & sup
            if new != old:
                if not new:
                    return False
                L[w] = new
                if not inq[w]:
                    inq[w] = True
                    queue.append(w)
    return True


def ac_propagate(indptr, indices, hadj, lists, seeds=None):
    """Arc consistency in place on ``lists``; False iff some list empties,
    in which case ``lists`` is left as it was.

    ``seeds`` limits the initial queue to vertices whose list just changed.
    """
    n = len(lists)
    for v in range(n):
        if not lists[v]:
            return False
    order = range(n) if seeds is None else seeds
    inq = [False] * n
    queue = deque()
    for v in order:
        if not inq[v]:
            inq[v] = True
            queue.append(v)
    L = list(lists)
    if not _propagate(indptr, indices, hadj, L, queue, inq):
        return False
    lists[:] = L
    return True


def search(indptr, indices, hadj, lists, node_limit=0):
    """Backtracking with maintained arc consistency and MRV ordering.

    Returns ``(status, witness, nodes)``; ``witness`` is a color index per
    vertex when ``status == FOUND``.  ``node_limit == 0`` means unlimited.
    """
    n = len(lists)
    L = list(lists)
    if not ac_propagate(indptr, indices, hadj, L):
        return NOT_FOUND, None, 1
    nodes = 0
    stack = []
    # iterative DFS; each frame: (vertex, remaining colors, saved lists)
    while True:
        nodes += 1
        if node_limit and nodes > node_limit:
            return LIMIT, None, nodes - 1
        best = -1
        best_size = 1 << 30
        for v in range(n):
            m = L[v]
            if m & (m - 1):
                size = bin(m).count("1")
                if size < best_size:
                    best_size = size
                    best = v
        if best < 0:
            return FOUND, [L[v].bit_length() - 1 for v in range(n)], nodes
        stack.append([best, L[best], L])
        # descend into the first viable child (or backtrack)
        while True:
            if not stack:
                return NOT_FOUND, None, nodes
            frame = stack[-1]
            v, rest, saved = frame
            if not rest:
                stack.pop()
                continue
            low = rest & -rest
            frame[1] = rest ^ low
            L = list(saved)
            L[v] = low
            inq = [False] * n
            inq[v] = True
            if _propagate(indptr, indices, hadj, L, deque([v]), inq):
                break
            nodes += 1
            if node_limit and nodes > node_limit:
                return LIMIT, None, nodes - 1
