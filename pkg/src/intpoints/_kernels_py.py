"""Pure-Python/numpy implementation of the hot kernels.

Same contracts as the compiled ``_kernels`` module; used when the extension
is not built.
"""
from __future__ import annotations

import time

import numpy as np

IMPLEMENTATION = "python"


def _rows(adj: np.ndarray) -> list[int]:
    rows = []
    for r in np.asarray(adj, dtype=bool):
        bits = np.packbits(r, bitorder="little")
        rows.append(int.from_bytes(bits.tobytes(), "little"))
    return rows


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _top_branches(rows: list[int], n: int) -> tuple[list[int], int]:
    P = (1 << n) - 1
    pivot, best = -1, -1
    for u in range(n):
        c = (P & rows[u]).bit_count()
        if c > best:
            pivot, best = u, c
    cand = P & ~rows[pivot] if n else 0
    return list(_bits(cand)), P


def count_top_branches(adj: np.ndarray) -> int:
    n = len(adj)
    return len(_top_branches(_rows(adj), n)[0]) if n else 0


class _Abort(Exception):
    pass


def max_cliques(adj: np.ndarray, floor: int = 0, deadline: float | None = None,
                branches: tuple[int, int] | None = None):
    """Enumerate maximal cliques (pivoting Bron-Kerbosch on int bitsets).

    Returns ``(cliques, complete)`` where each clique is a sorted tuple of
    vertex indices of size >= floor.  ``branches=(lo, hi)`` restricts the
    search to that slice of top-level branches; slices partition the output.
    """
    n = len(adj)
    rows = _rows(adj)
    out: list[tuple[int, ...]] = []
    if n == 0:
        return ([()] if floor <= 0 else []), True
    nodes = 0

    def expand(R, P, X):
        nonlocal nodes
        if not P:
            if not X and len(R) >= floor:
                out.append(tuple(sorted(R)))
            return
        if len(R) + P.bit_count() < floor:
            return
        nodes += 1
        if deadline is not None and nodes & 0x3FF == 0 and time.monotonic() > deadline:
            raise _Abort
        PX = P | X
        pivot, best = -1, -1
        for u in _bits(PX):
            c = (P & rows[u]).bit_count()
            if c > best:
                pivot, best = u, c
        for v in _bits(P & ~rows[pivot]):
            nv = rows[v]
            R.append(v)
            expand(R, P & nv, X & nv)
            R.pop()
            bit = 1 << v
            P &= ~bit
            X |= bit

    cand, P = _top_branches(rows, n)
    lo, hi = branches if branches is not None else (0, len(cand))
    X = 0
    try:
        for i, v in enumerate(cand):
            if i >= hi:
                break
            if i >= lo:
                nv = rows[v]
                expand([v], P & nv, X & nv)
            bit = 1 << v
            P &= ~bit
            X |= bit
    except _Abort:
        return out, False
    return out, True


def canon_batch(L: np.ndarray, sub: np.ndarray, flat: np.ndarray, offsets: np.ndarray):
    """Least anchored image of each point set under an origin-fixing group.

    ``L`` holds the group's origin stabiliser as rows of a permutation table,
    ``sub[u, v]`` is the code of u - v.  For every set S (``flat`` sliced by
    ``offsets``) the result is min over h in L and a in S of sort(h(S) - h(a)),
    together with the number of (h, a) attaining it, which equals the order of
    the set stabiliser in the full group (translations times L).
    """
    flat = np.asarray(flat, dtype=np.int64)
    out = np.empty_like(flat, dtype=np.int32)
    stab = np.zeros(len(offsets) - 1, dtype=np.int64)
    m = L.shape[0]
    for s in range(len(offsets) - 1):
        lo, hi = offsets[s], offsets[s + 1]
        k = hi - lo
        if k == 0:
            stab[s] = m * L.shape[1]
            continue
        imgs = L[:, flat[lo:hi]]
        d = sub[imgs[:, None, :], imgs[:, :, None]]  # [h, a, j] = img_j - img_a
        rows = np.sort(d.reshape(m * k, k), axis=1)
        order = np.lexsort(rows.T[::-1])
        best = rows[order[0]]
        out[lo:hi] = best
        stab[s] = int(np.count_nonzero((rows == best).all(axis=1)))
    return out, stab
