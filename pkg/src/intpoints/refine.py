"""Individualisation-refinement for the automorphism group of a graph.

Partitions are stored nauty-style as an ordered vertex list ``lab`` together
with the start positions of the cells, so a cell keeps its start when it is
split.  Refinement splits cells by the number of neighbours in a splitter
cell until the partition is equitable; fragments are ordered by that count,
which keeps the process isomorphism-invariant.

The search follows one leftmost path (the base), then for each level, deepest
first, looks for automorphisms mapping the base vertex to every other vertex
of the target cell that is not yet known to be in its orbit.  Subtrees whose
refinement trace differs from the base path are pruned.  The group order is
the product of the base-point orbit sizes.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np


class RefineTimeout(TimeoutError):
    pass


@dataclass
class AutResult:
    order: int
    generators: list[np.ndarray]
    base: list[int]
    orbit_sizes: list[int]
    levels: list[int] = field(default_factory=list)  # level at which each generator was found

    @property
    def stabilizer_generators(self) -> list[np.ndarray]:
        """Generators fixing the first base point."""
        return [g for g, lv in zip(self.generators, self.levels) if lv >= 1]


class _Node:
    __slots__ = ("lab", "ends", "trace")

    def __init__(self, lab, ends, trace):
        self.lab = lab    # list of vertices
        self.ends = ends  # dict: cell start -> cell end (exclusive)
        self.trace = trace

    def discrete(self) -> bool:
        return len(self.ends) == len(self.lab)

    def target(self) -> tuple[int, int]:
        """First largest non-singleton cell."""
        best = (0, 0)
        for s in sorted(self.ends):
            e = self.ends[s]
            if e - s > best[1] - best[0]:
                best = (s, e)
        return best


class _Refiner:
    def __init__(self, adj: np.ndarray, deadline: float | None):
        a = np.asarray(adj, dtype=bool)
        self.adj = a
        self.n = a.shape[0]
        self.rows = [int.from_bytes(np.packbits(r, bitorder="little").tobytes(), "little") for r in a]
        self.deadline = deadline

    def refine(self, lab: list[int], ends: dict[int, int], queue: list[int], trace: list) -> _Node:
        rows = self.rows
        queued = set(queue)
        while queue:
            if self.deadline is not None and time.monotonic() > self.deadline:
                raise RefineTimeout
            ws = queue.pop(0)
            queued.discard(ws)
            mask = 0
            for v in lab[ws:ends[ws]]:
                mask |= 1 << v
            for s in sorted(ends):
                e = ends[s]
                if e - s == 1:
                    continue
                cell = lab[s:e]
                counts = [(rows[v] & mask).bit_count() for v in cell]
                if min(counts) == max(counts):
                    continue
                pairs = sorted(zip(counts, cell))
                lab[s:e] = [v for _, v in pairs]
                frag = []
                pos = s
                for i in range(1, len(pairs) + 1):
                    if i == len(pairs) or pairs[i][0] != pairs[i - 1][0]:
                        frag.append((pos, s + i, pairs[i - 1][0]))
                        pos = s + i
                for fs, fe, _ in frag:
                    ends[fs] = fe
                trace.append((s, tuple((fe - fs, c) for fs, fe, c in frag)))
                was_queued = s in queued
                largest = max(frag, key=lambda f: f[1] - f[0])
                for fs, fe, _ in frag:
                    if fs in queued:
                        continue
                    if was_queued or (fs, fe) != largest[:2]:
                        queue.append(fs)
                        queued.add(fs)
        return _Node(lab, ends, tuple(trace))

    def root(self) -> _Node:
        n = self.n
        return self.refine(list(range(n)), {0: n}, [0], [])

    def individualize(self, node: _Node, v: int) -> _Node:
        lab = list(node.lab)
        ends = dict(node.ends)
        s, e = node.target()
        i = lab.index(v, s, e)
        lab[s], lab[i] = lab[i], lab[s]
        ends[s] = s + 1
        ends[s + 1] = e
        return self.refine(lab, ends, [s], [("ind", s)])


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int):
        a, b = self.find(a), self.find(b)
        if a == b:
            return
        if self.size[a] < self.size[b]:
            a, b = b, a
        self.parent[b] = a
        self.size[a] += self.size[b]


def automorphism_group(adj: np.ndarray, timeout: float | None = None) -> AutResult:
    """Order and generators of Aut(adj) by individualisation-refinement."""
    deadline = time.monotonic() + timeout if timeout else None
    R = _Refiner(adj, deadline)
    n = R.n
    path = [R.root()]
    base = []
    while not path[-1].discrete():
        node = path[-1]
        s, e = node.target()
        v = min(node.lab[s:e])
        base.append(v)
        path.append(R.individualize(node, v))
    leaf = np.asarray(path[-1].lab)
    depth = len(base)

    def leaf_perm(node: _Node) -> np.ndarray:
        p = np.empty(n, dtype=np.int32)
        p[leaf] = node.lab
        return p

    def search(node: _Node, d: int):
        """An automorphism mapping the base leaf into this subtree, or None."""
        if node.trace != path[d].trace:
            return None
        if node.discrete():
            p = leaf_perm(node)
            return p if np.array_equal(R.adj[np.ix_(p, p)], R.adj) else None
        s, e = node.target()
        if (s, e) != path[d].target():
            return None
        for v in sorted(node.lab[s:e]):
            found = search(R.individualize(node, v), d + 1)
            if found is not None:
                return found
        return None

    gens: list[np.ndarray] = []
    levels: list[int] = []
    orbit_sizes = [1] * depth
    for d in range(depth - 1, -1, -1):
        uf = _UnionFind(n)
        for g in gens:
            for x in range(n):
                uf.union(x, int(g[x]))
        node = path[d]
        s, e = node.target()
        failed: list[int] = []
        b = base[d]
        for w in sorted(node.lab[s:e]):
            if uf.find(w) == uf.find(b) or any(uf.find(w) == uf.find(f) for f in failed):
                continue
            g = search(R.individualize(node, w), d + 1)
            if g is None:
                failed.append(w)
                continue
            gens.append(g)
            levels.append(d)
            for x in range(n):
                uf.union(x, int(g[x]))
        cell = node.lab[s:e]
        orbit_sizes[d] = sum(1 for w in cell if uf.find(w) == uf.find(b))
    return AutResult(math.prod(orbit_sizes), gens, base, orbit_sizes, levels)
