# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: bitset Bron-Kerbosch and anchored minimal images.

Contracts match ``_kernels_py``; both loops run without the GIL so callers
may fan batches out over threads.
"""
import numpy as np

from libc.stdint cimport uint64_t, int32_t, int64_t
from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memcpy, memset
from posix.time cimport clock_gettime, timespec, CLOCK_MONOTONIC

IMPLEMENTATION = "cython"

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int popc(uint64_t x) noexcept nogil:
    return __builtin_popcountll(x)


cdef inline double now() noexcept nogil:
    cdef timespec ts
    clock_gettime(CLOCK_MONOTONIC, &ts)
    return ts.tv_sec + 1e-9 * ts.tv_nsec


cdef struct BK:
    int n
    int W
    const uint64_t *adj
    uint64_t *stack      # per depth: P, X, cand (3 * W words)
    int32_t *R
    int floor
    double deadline
    int64_t nodes
    int aborted
    int32_t *buf         # emitted vertices, cliques separated by sizes
    int64_t blen
    int64_t bcap
    int32_t *sizes
    int64_t nsz
    int64_t scap
    int oom


cdef int emit(BK *s, int rlen) noexcept nogil:
    cdef int32_t *nb
    if s.blen + rlen > s.bcap:
        while s.blen + rlen > s.bcap:
            s.bcap = 2 * s.bcap + 64
        nb = <int32_t *> realloc(s.buf, s.bcap * sizeof(int32_t))
        if nb == NULL:
            s.oom = 1
            return -1
        s.buf = nb
    if s.nsz + 1 > s.scap:
        s.scap = 2 * s.scap + 64
        nb = <int32_t *> realloc(s.sizes, s.scap * sizeof(int32_t))
        if nb == NULL:
            s.oom = 1
            return -1
        s.sizes = nb
    memcpy(s.buf + s.blen, s.R, rlen * sizeof(int32_t))
    s.blen += rlen
    s.sizes[s.nsz] = rlen
    s.nsz += 1
    return 0


cdef void expand(BK *s, int depth, int rlen) noexcept nogil:
    cdef int W = s.W
    cdef uint64_t *P = s.stack + <int64_t> depth * 3 * W
    cdef uint64_t *X = P + W
    cdef uint64_t *C = X + W
    cdef uint64_t *nP = P + 3 * W
    cdef uint64_t *nX = nP + W
    cdef const uint64_t *row
    cdef int w, u, v, c, best, pivot, pc = 0, px = 0
    cdef uint64_t m
    for w in range(W):
        pc += popc(P[w])
        px |= X[w] != 0
    if pc == 0:
        if not px and rlen >= s.floor:
            if emit(s, rlen) < 0:
                s.aborted = 1
        return
    if rlen + pc < s.floor:
        return
    s.nodes += 1
    if s.deadline > 0 and (s.nodes & 0xFFF) == 0 and now() > s.deadline:
        s.aborted = 1
        return
    best = -1
    pivot = -1
    for w in range(W):
        m = P[w] | X[w]
        while m:
            u = w * 64 + __builtin_ctzll(m)
            m &= m - 1
            row = s.adj + <int64_t> u * W
            c = 0
            for v in range(W):
                c += popc(P[v] & row[v])
            if c > best:
                best = c
                pivot = u
    row = s.adj + <int64_t> pivot * W
    for w in range(W):
        C[w] = P[w] & ~row[w]
    for w in range(W):
        while C[w]:
            v = w * 64 + __builtin_ctzll(C[w])
            C[w] &= C[w] - 1
            row = s.adj + <int64_t> v * W
            for u in range(W):
                nP[u] = P[u] & row[u]
                nX[u] = X[u] & row[u]
            s.R[rlen] = v
            expand(s, depth + 1, rlen + 1)
            if s.aborted:
                return
            P[w] &= ~((<uint64_t> 1) << (v & 63))
            X[w] |= (<uint64_t> 1) << (v & 63)


def _pack(adj):
    a = np.ascontiguousarray(np.asarray(adj, dtype=bool))
    n = a.shape[0]
    W = max(1, (n + 63) // 64)
    padded = np.zeros((n, W * 64), dtype=bool)
    padded[:, :n] = a
    words = np.packbits(padded, axis=1, bitorder="little").view(np.uint64)
    return np.ascontiguousarray(words), n, W


cdef list _top(const uint64_t[:, ::1] words, int n, int W):
    cdef int u, w, c, best = -1, pivot = 0
    for u in range(n):
        c = 0
        for w in range(W):
            c += popc(words[u, w])
        if c > best:
            best = c
            pivot = u
    return [v for v in range(n) if not (words[pivot, v >> 6] >> (v & 63)) & 1]


def count_top_branches(adj):
    cdef int n, W
    words, n, W = _pack(adj)
    return len(_top(words, n, W)) if n else 0


def max_cliques(adj, int floor=0, deadline=None, branches=None):
    """Enumerate maximal cliques; see ``_kernels_py.max_cliques``."""
    cdef int n, W
    words, n, W = _pack(adj)
    if n == 0:
        return ([()] if floor <= 0 else []), True
    cdef const uint64_t[:, ::1] wv = words
    cand = _top(wv, n, W)
    lo, hi = branches if branches is not None else (0, len(cand))
    cdef BK s
    s.n = n
    s.W = W
    s.adj = &wv[0, 0]
    s.stack = <uint64_t *> malloc((n + 2) * 3 * W * sizeof(uint64_t))
    s.R = <int32_t *> malloc((n + 1) * sizeof(int32_t))
    s.floor = floor
    s.deadline = deadline if deadline is not None else 0.0
    s.nodes = 0
    s.aborted = 0
    s.buf = NULL
    s.blen = 0
    s.bcap = 0
    s.sizes = NULL
    s.nsz = 0
    s.scap = 0
    s.oom = 0
    if s.stack == NULL or s.R == NULL:
        free(s.stack)
        free(s.R)
        raise MemoryError()
    cdef uint64_t *P = s.stack
    cdef uint64_t *X = P + W
    cdef uint64_t *nP = P + 3 * W
    cdef uint64_t *nX = nP + W
    cdef int i, v, u
    cdef int ilo = lo, ihi = hi
    cdef int32_t[::1] cv = np.asarray(cand, dtype=np.int32)
    cdef int ncand = len(cand)
    try:
        with nogil:
            memset(P, 0, 2 * W * sizeof(uint64_t))
            for v in range(n):
                P[v >> 6] |= (<uint64_t> 1) << (v & 63)
            for i in range(ncand):
                if i >= ihi:
                    break
                v = cv[i]
                if i >= ilo:
                    for u in range(W):
                        nP[u] = P[u] & s.adj[<int64_t> v * W + u]
                        nX[u] = X[u] & s.adj[<int64_t> v * W + u]
                    s.R[0] = v
                    expand(&s, 1, 1)
                    if s.aborted:
                        break
                P[v >> 6] &= ~((<uint64_t> 1) << (v & 63))
                X[v >> 6] |= (<uint64_t> 1) << (v & 63)
        if s.oom:
            raise MemoryError()
        out = []
        pos = 0
        for i in range(s.nsz):
            k = s.sizes[i]
            out.append(tuple(sorted(s.buf[pos + j] for j in range(k))))
            pos += k
        return out, not s.aborted
    finally:
        free(s.stack)
        free(s.R)
        free(s.buf)
        free(s.sizes)


cdef void canon_one(const int32_t *L, int64_t m, int64_t n, const int32_t *sub,
                    const int32_t *pts, int k, int32_t *best, int64_t *count,
                    int32_t *img, int32_t *tmp) noexcept nogil:
    cdef int64_t h
    cdef int a, j, s, t, mi, state, have = 0
    cdef int32_t x
    cdef const int32_t *row
    cdef const int32_t *srow
    count[0] = 0
    for h in range(m):
        row = L + h * n
        for j in range(k):
            img[j] = row[pts[j]]
        for a in range(k):
            for j in range(k):
                tmp[j] = sub[<int64_t> img[j] * n + img[a]]
            state = 0
            for s in range(k):
                mi = s
                for t in range(s + 1, k):
                    if tmp[t] < tmp[mi]:
                        mi = t
                x = tmp[s]
                tmp[s] = tmp[mi]
                tmp[mi] = x
                if have and state == 0:
                    if tmp[s] > best[s]:
                        state = 1
                        break
                    elif tmp[s] < best[s]:
                        state = -1
            if not have or state == -1:
                memcpy(best, tmp, k * sizeof(int32_t))
                count[0] = 1
                have = 1
            elif state == 0:
                count[0] += 1


def canon_batch(L, sub, flat, offsets):
    """Anchored minimal images; see ``_kernels_py.canon_batch``."""
    cdef const int32_t[:, ::1] Lv = np.ascontiguousarray(L, dtype=np.int32)
    cdef const int32_t[:, ::1] sv = np.ascontiguousarray(sub, dtype=np.int32)
    cdef const int32_t[::1] fv = np.ascontiguousarray(flat, dtype=np.int32)
    cdef const int64_t[::1] ov = np.ascontiguousarray(offsets, dtype=np.int64)
    out_arr = np.zeros(len(fv), dtype=np.int32)
    stab_arr = np.zeros(len(ov) - 1, dtype=np.int64)
    cdef int32_t[::1] out = out_arr
    cdef int64_t[::1] stab = stab_arr
    cdef int64_t m = Lv.shape[0], n = Lv.shape[1], s, nsets = len(ov) - 1
    cdef int k, kmax = 1
    for s in range(nsets):
        kmax = max(kmax, <int> (ov[s + 1] - ov[s]))
    cdef int32_t *img = <int32_t *> malloc(kmax * sizeof(int32_t))
    cdef int32_t *tmp = <int32_t *> malloc(kmax * sizeof(int32_t))
    if img == NULL or tmp == NULL:
        free(img)
        free(tmp)
        raise MemoryError()
    if len(fv) == 0:
        for s in range(nsets):
            stab[s] = m * n
        free(img)
        free(tmp)
        return out_arr, stab_arr
    with nogil:
        for s in range(nsets):
            k = <int> (ov[s + 1] - ov[s])
            if k == 0:
                stab[s] = m * n
                continue
            canon_one(&Lv[0, 0], m, n, &sv[0, 0], &fv[ov[s]], k,
                      &out[ov[s]], &stab[s], img, tmp)
    free(img)
    free(tmp)
    return out_arr, stab_arr
