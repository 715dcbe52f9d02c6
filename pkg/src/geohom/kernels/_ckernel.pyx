# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_pykernel``; same search order, same node counts.

Colors must fit in 64 bits; the dispatcher in ``geohom.kernels`` routes
larger targets to the Python implementation.
"""
from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

BACKEND = "cython"

FOUND = 1
NOT_FOUND = 0
LIMIT = -1


cdef inline int _popcount(uint64_t m) nogil:
    return __builtin_popcountll(m)


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline uint64_t _support(const uint64_t* hadj, uint64_t mask) nogil:
    cdef uint64_t out = 0
    cdef uint64_t low
    while mask:
        low = mask & (~mask + 1)
        out |= hadj[__builtin_ctzll(low)]
        mask ^= low
    return out


cdef class _Buffers:
    cdef int n
    cdef int* indptr
    cdef int* indices
    cdef uint64_t* hadj
    cdef int* queue
    cdef char* inq

    def __cinit__(self, indptr, indices, hadj, int n):
        cdef int i
        self.n = n
        self.indptr = <int*> malloc((n + 1) * sizeof(int))
        self.indices = <int*> malloc((len(indices) + 1) * sizeof(int))
        self.hadj = <uint64_t*> malloc((len(hadj) + 1) * sizeof(uint64_t))
        self.queue = <int*> malloc((n + 1) * sizeof(int))
        self.inq = <char*> malloc((n + 1) * sizeof(char))
        if not (self.indptr and self.indices and self.hadj and self.queue and self.inq):
            raise MemoryError()
        for i in range(n + 1):
            self.indptr[i] = indptr[i]
        for i in range(len(indices)):
            self.indices[i] = indices[i]
        for i in range(len(hadj)):
            self.hadj[i] = hadj[i]

    def __dealloc__(self):
        free(self.indptr)
        free(self.indices)
        free(self.hadj)
        free(self.queue)
        free(self.inq)


cdef bint _full_ac(_Buffers b, uint64_t* L):
    cdef int v
    for v in range(b.n):
        if L[v] == 0:
            return False
    for v in range(b.n):
        b.queue[v] = v
        b.inq[v] = 1
    return _propagate_count(b, L, 0, b.n)


cdef bint _propagate_from(_Buffers b, uint64_t* L, int v):
    cdef int i
    for i in range(b.n):
        b.inq[i] = 0
    b.queue[0] = v
    b.inq[v] = 1
    return _propagate_count(b, L, 0, 1)


cdef bint _propagate_count(_Buffers b, uint64_t* L, int head, int count):
    cdef int n = b.n
    cdef int tail = (head + count) % n
    cdef int u, w, k
    cdef uint64_t sup, old, new
    while count:
        u = b.queue[head]
        head += 1
        if head == n:
            head = 0
        count -= 1
        b.inq[u] = 0
        sup = _support(b.hadj, L[u])
        for k in range(b.indptr[u], b.indptr[u + 1]):
            w = b.indices[k]
            old = L[w]
            new = old & sup
            if new != old:
                if new == 0:
                    return False
                L[w] = new
                if not b.inq[w]:
                    b.inq[w] = 1
                    b.queue[tail] = w
                    tail += 1
                    if tail == n:
                        tail = 0
                    count += 1
    return True


def ac_propagate(indptr, indices, hadj, lists, seeds=None):
    cdef int n = len(lists)
    cdef int v, i, count
    cdef _Buffers b
    cdef uint64_t* L
    cdef bint ok
    for v in range(n):
        if not lists[v]:
            return False
    if n == 0:
        return True
    b = _Buffers(indptr, indices, hadj, n)
    L = <uint64_t*> malloc(n * sizeof(uint64_t))
    if not L:
        raise MemoryError()
    try:
        for v in range(n):
            L[v] = lists[v]
            b.inq[v] = 0
        count = 0
        order = range(n) if seeds is None else seeds
        for v in order:
            if not b.inq[v]:
                b.inq[v] = 1
                b.queue[count] = v
                count += 1
        ok = _propagate_count(b, L, 0, count)
        if ok:
            for v in range(n):
                lists[v] = L[v]
        return ok
    finally:
        free(L)


def search(indptr, indices, hadj, lists, long long node_limit=0):
    cdef int n = len(lists)
    cdef _Buffers b
    cdef uint64_t* trail
    cdef uint64_t* L
    cdef int* fv
    cdef uint64_t* frest
    cdef int depth, v, best, best_size, size
    cdef uint64_t m, rest, low
    cdef long long nodes = 0
    for v in range(n):
        if not lists[v]:
            return NOT_FOUND, None, 1
    if n == 0:
        return FOUND, [], 1
    b = _Buffers(indptr, indices, hadj, n)
    # row 0 = working lists; rows 1..n+1 = saved lists per frame
    trail = <uint64_t*> malloc((n + 2) * n * sizeof(uint64_t))
    fv = <int*> malloc((n + 2) * sizeof(int))
    frest = <uint64_t*> malloc((n + 2) * sizeof(uint64_t))
    if not (trail and fv and frest):
        free(trail); free(fv); free(frest)
        raise MemoryError()
    try:
        L = trail
        for v in range(n):
            L[v] = lists[v]
        if not _full_ac(b, L):
            return NOT_FOUND, None, 1
        depth = 0
        while True:
            nodes += 1
            if node_limit and nodes > node_limit:
                return LIMIT, None, nodes - 1
            best = -1
            best_size = 1 << 30
            for v in range(n):
                m = L[v]
                if m & (m - 1):
                    size = _popcount(m)
                    if size < best_size:
                        best_size = size
                        best = v
            if best < 0:
                return FOUND, [__builtin_ctzll(L[v]) for v in range(n)], nodes
            depth += 1
            fv[depth] = best
            frest[depth] = L[best]
            memcpy(trail + depth * n, L, n * sizeof(uint64_t))
            while True:
                if depth == 0:
                    return NOT_FOUND, None, nodes
                rest = frest[depth]
                if rest == 0:
                    depth -= 1
                    continue
                low = rest & (~rest + 1)
                frest[depth] = rest ^ low
                memcpy(L, trail + depth * n, n * sizeof(uint64_t))
                v = fv[depth]
                L[v] = low
                if _propagate_from(b, L, v):
                    break
                nodes += 1
                if node_limit and nodes > node_limit:
                    return LIMIT, None, nodes - 1
    finally:
        free(trail)
        free(fv)
        free(frest)
