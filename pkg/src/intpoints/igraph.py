"""The graph of integral distances on F_q^2 and its local version at the origin."""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import NamedTuple, TextIO

import numpy as np

from .field import FieldCtx, FieldError
from .plane import plane_tables

MAX_GRAPH_Q = 101


class NotStronglyRegular(ValueError):
    pass


class SrgParams(NamedTuple):
    v: int
    k: int
    lam: int
    mu: int

    def identity_holds(self) -> bool:
        return self.k * (self.k - self.lam - 1) == (self.v - self.k - 1) * self.mu


@dataclass(frozen=True, eq=False)
class IntegralGraph:
    """Vertices are point codes 0..q^2-1; ``adj`` is the boolean adjacency."""

    field: FieldCtx
    adj: np.ndarray

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    @functools.cached_property
    def packed(self) -> np.ndarray:
        return pack_rows(self.adj)

    def degree(self) -> np.ndarray:
        return self.adj.sum(axis=1)

    def complement(self) -> IntegralGraph:
        c = ~self.adj
        np.fill_diagonal(c, False)
        return IntegralGraph(self.field, c)


@dataclass(frozen=True, eq=False)
class LocalGraph:
    """Induced subgraph on the integral neighbours of the origin."""

    field: FieldCtx
    vertices: np.ndarray
    adj: np.ndarray

    @property
    def n(self) -> int:
        return len(self.vertices)


def pack_rows(adj: np.ndarray) -> np.ndarray:
    n = adj.shape[1]
    W = max(1, (n + 63) // 64)
    padded = np.zeros((adj.shape[0], W * 64), dtype=bool)
    padded[:, :n] = adj
    return np.packbits(padded, axis=1, bitorder="little").view(np.uint64)


def integral_adjacency(ctx: FieldCtx, codes: np.ndarray) -> np.ndarray:
    """Adjacency among the given point codes (no loops)."""
    t = plane_tables(ctx)
    codes = np.asarray(codes, dtype=np.int64)
    a = t.integral[t.diff(codes[:, None], codes[None, :])]
    np.fill_diagonal(a, False)
    return a


def build_graph(ctx: FieldCtx) -> IntegralGraph:
    return _build_graph(ctx)


@functools.lru_cache(maxsize=8)
def _build_graph(ctx: FieldCtx) -> IntegralGraph:
    if ctx.q > MAX_GRAPH_Q:
        raise FieldError(f"graph of integral distances limited to q <= {MAX_GRAPH_Q}")
    adj = integral_adjacency(ctx, np.arange(ctx.q * ctx.q))
    adj.setflags(write=False)
    return IntegralGraph(ctx, adj)


def expected_srg(q: int) -> SrgParams:
    if q % 4 == 3:
        return SrgParams(q * q, (q * q - 1) // 2, (q * q - 1) // 4 - 1, (q * q - 1) // 4)
    if q % 4 == 1:
        return SrgParams(q * q, (q - 1) * (q + 3) // 2, (q + 1) * (q + 3) // 4 - 3, (q + 1) * (q + 3) // 4)
    raise ValueError("closed form only for odd q")


def expected_complement_srg(q: int) -> SrgParams:
    if q % 4 != 1:
        raise ValueError("complement parameters are stated for q = 1 (mod 4)")
    return SrgParams(q * q, (q - 1) ** 2 // 2, (q - 1) * (q - 3) // 4 + 1, (q - 1) * (q - 3) // 4)


def _srg_from_adj(adj: np.ndarray) -> SrgParams:
    n = adj.shape[0]
    deg = adj.sum(axis=1)
    if not (deg == deg[0]).all():
        raise NotStronglyRegular("graph is not regular")
    words = pack_rows(adj)
    lam = mu = None
    for u in range(n):
        common = np.bitwise_count(words[u] & words).sum(axis=1)
        nb = adj[u].copy()
        non = ~adj[u]
        non[u] = False
        a_vals = np.unique(common[nb])
        m_vals = np.unique(common[non])
        if len(a_vals) > 1 or len(m_vals) > 1:
            raise NotStronglyRegular(f"vertex {u}: common-neighbour counts {a_vals}, {m_vals}")
        if len(a_vals):
            if lam is None:
                lam = int(a_vals[0])
            elif lam != a_vals[0]:
                raise NotStronglyRegular("lambda varies between vertices")
        if len(m_vals):
            if mu is None:
                mu = int(m_vals[0])
            elif mu != m_vals[0]:
                raise NotStronglyRegular("mu varies between vertices")
    return SrgParams(n, int(deg[0]), lam or 0, mu or 0)


def srg_params(g: IntegralGraph) -> SrgParams:
    """Exhaustive common-neighbour count over all vertex pairs."""
    return _srg_from_adj(g.adj)


def complement_params(g: IntegralGraph) -> SrgParams:
    if g.field.q % 4 != 1:
        raise ValueError("complement parameters are stated for q = 1 (mod 4)")
    return _srg_from_adj(g.complement().adj)


def gauss_squares(ctx: FieldCtx) -> np.ndarray:
    """Boolean mask over plane codes: x + y i is a square in F_q[i]."""
    q = ctx.q
    mask = np.zeros(q * q, dtype=bool)
    t = plane_tables(ctx)
    a, b = t.xs, t.ys
    # (a + b i)^2 = a^2 - b^2 + 2ab i
    re = ctx.sub_table[ctx.square_of[a], ctx.square_of[b]]
    im = ctx.mul_table[ctx.add_table[a, a], b]
    mask[re * q + im] = True
    return mask


def verify_paley_iso(ctx: FieldCtx) -> bool:
    """x^2 + y^2 is a square of F_q exactly when x + y i is a square of F_{q^2}."""
    if ctx.q % 4 != 3:
        raise ValueError("the Paley identification needs q = 3 (mod 4)")
    t = plane_tables(ctx)
    return bool((t.integral == gauss_squares(ctx)).all())


def local_graph(ctx: FieldCtx) -> LocalGraph:
    if ctx.q % 2 == 0:
        raise ValueError("local graph is defined for odd q")
    t = plane_tables(ctx)
    verts = np.flatnonzero(t.integral)
    verts = verts[verts != 0]
    return LocalGraph(ctx, verts, integral_adjacency(ctx, verts))


def expected_local_size(q: int) -> int:
    return (q * q - 1) // 2 if q % 4 == 3 else (q - 1) * (q + 3) // 2


def write_edge_list(g: IntegralGraph, fh: TextIO) -> int:
    """Write ``u v`` lines (u < v, vertex codes); returns the edge count."""
    us, vs = np.nonzero(np.triu(g.adj, 1))
    for u, v in zip(us.tolist(), vs.tolist()):
        fh.write(f"{u} {v}\n")
    return len(us)
