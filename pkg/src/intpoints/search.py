"""Maximality tests, maximal-clique enumeration and the classification of
inclusion-maximal integral point sets up to isomorphism.

Every maximal integral point set with at least two points contains an
integral pair, and the automorphism group moves any pair with nonzero
squared distance to (0, 0), (1, 0).  Hence the classes of maximal sets that
contain such a pair are exactly the classes of

    {(0, 0), (1, 0)} + K,   K a maximal clique of the common neighbourhood,

and each is found once per isomorphic copy through that pair.  A set all of
whose pairs are at squared distance zero lies on a single vanishing line
(three pairwise-vanishing points are collinear), so the only other candidate
is the vanishing line y = omega x itself.  Candidates are merged by their
anchored canonical form.  Sets of size 0 or 1 are never maximal for q >= 2.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

import numpy as np

from . import kernels
from .field import FieldCtx
from .igraph import LocalGraph, integral_adjacency
from .plane import PlaneError, PointSet, integral_set, plane_tables
from .symmetry import PermGroup, canonical_batch, classification_group

MAX_CLASSIFY_Q = 47


class SearchBudgetExceeded(TimeoutError):
    """Raised when a search runs out of time; no partial table is returned."""


@dataclass
class SpectrumTable:
    q: int
    rows: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.rows.values())

    @property
    def min_size(self) -> int:
        return min(s for s, c in self.rows.items() if c)

    @property
    def max_size(self) -> int:
        return max(s for s, c in self.rows.items() if c)

    def to_tsv(self) -> str:
        cells = "\t".join(f"{s}:{self.rows[s]}" for s in sorted(self.rows) if self.rows[s])
        return f"{self.q}\t{self.total}\t{cells}"

    def to_dict(self) -> dict:
        return {"q": self.q, "total": self.total, "rows": {str(s): c for s, c in sorted(self.rows.items())}}


@dataclass
class ClassRecord:
    representative: PointSet
    stab_order: int
    orbit_len: int

    @property
    def size(self) -> int:
        return len(self.representative)

    def to_dict(self) -> dict:
        f = self.representative.field
        return {"q": f.q, "p": f.p, "r": f.r, "size": self.size,
                "points": [list(c) for c in self.representative.coords()],
                "stab_order": self.stab_order, "orbit_len": self.orbit_len}


@dataclass
class Classification:
    table: SpectrumTable
    records: list[ClassRecord] = field(default_factory=list)
    group_order: int = 0
    candidates: int = 0


class SecondLargest(NamedTuple):
    value: int | None
    lower: int | None
    upper: int
    complete: bool


def _check_integral(P: PointSet):
    if not integral_set(P):
        raise PlaneError("point set is not integral")


def extension_candidates(P: PointSet) -> PointSet:
    """Points outside P at integral distance to every point of P."""
    _check_integral(P)
    t = plane_tables(P.field)
    ok = np.ones(t.n, dtype=bool)
    for c in P.codes:
        ok &= t.integral_row(c)
    ok[list(P.codes)] = False
    return PointSet.from_codes(P.field, np.flatnonzero(ok))


def is_maximal(P: PointSet) -> bool:
    return len(extension_candidates(P)) == 0


def _deadline(budget: float | None) -> float | None:
    return time.monotonic() + budget if budget else None


def _cliques(adj: np.ndarray, floor: int, deadline: float | None, threads: int):
    """All maximal cliques, top-level branches fanned out over threads."""
    threads = max(1, threads)
    nb = kernels.count_top_branches(adj) if len(adj) else 0
    if threads == 1 or nb < 2:
        return kernels.max_cliques(adj, floor=floor, deadline=deadline)
    chunks = max(threads * 4, 1)
    bounds = [(nb * i // chunks, nb * (i + 1) // chunks) for i in range(chunks)]
    with ThreadPoolExecutor(threads) as ex:
        parts = list(ex.map(lambda b: kernels.max_cliques(adj, floor=floor, deadline=deadline, branches=b), bounds))
    out = [c for part, _ in parts for c in part]
    return out, all(done for _, done in parts)


def enum_maximal_cliques(g: LocalGraph, size_floor: int = 0, budget: float | None = None,
                         threads: int = 1) -> Iterator[PointSet]:
    """Maximal cliques of the local graph, each returned with the origin added."""
    cl, done = _cliques(g.adj, max(0, size_floor - 1), _deadline(budget), threads)
    if not done:
        raise SearchBudgetExceeded("clique enumeration ran out of time")
    verts = g.vertices
    for c in cl:
        yield PointSet.from_codes(g.field, [0, *verts[list(c)].tolist()])


def seed_neighbourhood(ctx: FieldCtx, seed: int) -> np.ndarray:
    """Codes of points other than 0 and seed at integral distance to both."""
    t = plane_tables(ctx)
    ok = t.integral & t.integral_row(seed)
    ok[[0, seed]] = False
    return np.flatnonzero(ok)


def seeded_maximal_sets(ctx: FieldCtx, size_floor: int = 0, deadline: float | None = None,
                        threads: int = 1) -> tuple[list[tuple[int, ...]], bool]:
    """Maximal integral sets containing (0, 0) and (1, 0), as code tuples."""
    seed = ctx.q  # (1, 0)
    verts = seed_neighbourhood(ctx, seed)
    adj = integral_adjacency(ctx, verts)
    cl, done = _cliques(adj, max(0, size_floor - 2), deadline, threads)
    sets = [(0, seed, *verts[list(c)].tolist()) for c in cl]
    return sets, done


def vanishing_line(ctx: FieldCtx) -> PointSet | None:
    if ctx.omega is None:
        return None
    return PointSet(ctx, [(t, ctx.mul(t, ctx.omega)) for t in range(ctx.q)])


def _canon_parallel(group: PermGroup, sets, threads: int):
    if threads <= 1 or len(sets) < 64:
        return canonical_batch(group, sets)
    k = threads * 4
    parts = [sets[i::k] for i in range(k)]
    with ThreadPoolExecutor(threads) as ex:
        res = list(ex.map(lambda s: canonical_batch(group, s), parts))
    forms: list = [None] * len(sets)
    stabs: list = [None] * len(sets)
    for i, (f, s) in enumerate(res):
        forms[i::k] = f
        stabs[i::k] = s
    return forms, stabs


def classify_even(ctx: FieldCtx) -> SpectrumTable:
    """In characteristic 2 every squared distance is a square: the plane itself is the only class."""
    if ctx.q % 2:
        raise ValueError("classify_even needs even q")
    return SpectrumTable(ctx.q, {ctx.q * ctx.q: 1})


def classify(ctx: FieldCtx, threads: int = 1, budget: float | None = None,
             max_q: int = MAX_CLASSIFY_Q, group: PermGroup | None = None) -> Classification:
    """One record per isomorphism class of inclusion-maximal integral point sets."""
    if ctx.q % 2 == 0:
        full = PointSet.from_codes(ctx, range(ctx.q * ctx.q))
        return Classification(classify_even(ctx), [ClassRecord(full, 1, 1)], 0, 1)
    if ctx.q > max_q:
        raise ValueError(f"classification limited to q <= {max_q}")
    deadline = _deadline(budget)
    G = group or classification_group(ctx)
    sets, done = seeded_maximal_sets(ctx, 0, deadline, threads)
    if not done:
        raise SearchBudgetExceeded(f"q = {ctx.q}: clique search exceeded {budget} s")
    line = vanishing_line(ctx)
    if line is not None and is_maximal(line):
        sets.append(line.codes)
    forms, stabs = _canon_parallel(G, sets, threads)
    if deadline is not None and time.monotonic() > deadline:
        raise SearchBudgetExceeded(f"q = {ctx.q}: canonicalisation exceeded {budget} s")
    classes: dict[tuple[int, ...], int] = {}
    for f, s in zip(forms, stabs):
        classes.setdefault(f, s)
    records = [ClassRecord(PointSet.from_codes(ctx, f), s, G.order // s)
               for f, s in sorted(classes.items(), key=lambda kv: (len(kv[0]), kv[0]))]
    rows: dict[int, int] = {}
    for r in records:
        rows[r.size] = rows.get(r.size, 0) + 1
    return Classification(SpectrumTable(ctx.q, rows), records, G.order, len(sets))


def origin_orbit_count(records: list[ClassRecord]) -> int:
    """Number of maximal sets through the origin implied by the orbit lengths."""
    total = 0
    for r in records:
        q2 = r.representative.field.q ** 2
        num = r.orbit_len * r.size
        if num % q2:
            raise ValueError("orbit length times size not divisible by q^2")
        total += num // q2
    return total


def second_largest_size(ctx: FieldCtx, budget: float | None = None, threads: int = 1) -> SecondLargest:
    """Largest size below q of an inclusion-maximal integral point set.

    Searches with size floor (q + 3) / 2 first and lowers the floor only
    when nothing below q turns up.  Sets with only vanishing pairs are whole
    lines, so the seed (0, 0), (1, 0) suffices.
    """
    if ctx.q % 2 == 0:
        raise ValueError("odd q only")
    q = ctx.q
    deadline = _deadline(budget)
    floor = (q + 3) // 2
    upper = q - 1
    while floor >= 2:
        sets, done = seeded_maximal_sets(ctx, floor, deadline, threads)
        sizes = [len(s) for s in sets if len(s) < q]
        if sizes:
            best = max(sizes)
            if done:
                return SecondLargest(best, best, best, True)
            return SecondLargest(None, best, upper, False)
        if not done:
            return SecondLargest(None, None, upper, False)
        upper = floor - 1
        floor -= 2
    return SecondLargest(None, None, upper, True)
