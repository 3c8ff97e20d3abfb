"""Automorphisms of the integral-distance structure and canonical forms.

Every group handled here contains all translations of F_q^2, so it is the
product T * L of the translations with the stabiliser L of the origin.  A
group is stored as the explicit permutation table of L (one row per element,
row 0 the identity); canonical forms and set stabilisers are computed by
anchoring each point of a set at the origin instead of walking all of T.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import kernels
from .field import FieldCtx
from .plane import PointSet, plane_tables

IR_MAX_Q = 13  # default for the stand-alone |G| checks
CLASSIFY_IR_MAX_Q = 47  # prime powers up to here need only a few seconds


class GroupError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class AffMap:
    """x -> matrix * frob^k(x) + shift, acting on F_q^2 (frob^k raises coordinates to p^k)."""

    field: FieldCtx
    frob: int = 0
    matrix: tuple[int, int, int, int] = (1, 0, 0, 1)
    shift: tuple[int, int] = (0, 0)

    def key(self):
        return (self.frob % self.field.r, self.matrix, self.shift)

    def __eq__(self, other):
        return isinstance(other, AffMap) and self.field == other.field and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @property
    def is_translation(self) -> bool:
        return self.frob % self.field.r == 0 and self.matrix == (1, 0, 0, 1)

    @property
    def fixes_origin(self) -> bool:
        return self.shift == (0, 0)

    def _lin(self, x: int, y: int) -> tuple[int, int]:
        f = self.field
        a, b, c, d = self.matrix
        fx, fy = f.frob(x, self.frob), f.frob(y, self.frob)
        return f.add(f.mul(a, fx), f.mul(b, fy)), f.add(f.mul(c, fx), f.mul(d, fy))

    def apply(self, code: int) -> int:
        f = self.field
        x, y = self._lin(*divmod(int(code), f.q))
        return f.add(x, self.shift[0]) * f.q + f.add(y, self.shift[1])

    def perm(self) -> np.ndarray:
        """Images of all point codes (int32 array of length q^2)."""
        f = self.field
        t = plane_tables(f)
        fr = f.frob_table(self.frob) if f.r > 1 else np.arange(f.q)
        fx, fy = fr[t.xs], fr[t.ys]
        a, b, c, d = self.matrix
        mt, at = f.mul_table, f.add_table
        x = at[at[mt[a, fx], mt[b, fy]], self.shift[0]]
        y = at[at[mt[c, fx], mt[d, fy]], self.shift[1]]
        return (x * f.q + y).astype(np.int32)

    def compose(self, other: AffMap) -> AffMap:
        """self after other."""
        f = self.field
        k = self.frob
        a, b, c, d = self.matrix
        e, g, h, i = (f.frob(v, k) for v in other.matrix)
        m = (f.add(f.mul(a, e), f.mul(b, h)), f.add(f.mul(a, g), f.mul(b, i)),
             f.add(f.mul(c, e), f.mul(d, h)), f.add(f.mul(c, g), f.mul(d, i)))
        sx, sy = self._lin(*other.shift)
        return AffMap(f, (k + other.frob) % f.r, m, (f.add(sx, self.shift[0]), f.add(sy, self.shift[1])))

    def inverse(self) -> AffMap:
        f = self.field
        a, b, c, d = self.matrix
        det = f.sub(f.mul(a, d), f.mul(b, c))
        di = f.inv(det)
        inv = (f.mul(d, di), f.mul(f.neg(b), di), f.mul(f.neg(c), di), f.mul(a, di))
        k = (-self.frob) % f.r
        lin = AffMap(f, 0, inv).compose(AffMap(f, 0, (1, 0, 0, 1), (f.neg(self.shift[0]), f.neg(self.shift[1]))))
        return AffMap(f, k).compose(lin)

    def preserves_integrality(self) -> bool:
        """The linear part maps vectors of square length onto such vectors."""
        t = plane_tables(self.field)
        lin = AffMap(self.field, self.frob, self.matrix).perm()
        return bool(t.integral[lin[t.integral]].all())

    def to_dict(self) -> dict:
        a, b, c, d = self.matrix
        return {"frob": self.frob, "matrix": [[a, b], [c, d]], "shift": list(self.shift)}


def translation(ctx: FieldCtx, v: tuple[int, int]) -> AffMap:
    return AffMap(ctx, 0, (1, 0, 0, 1), tuple(v))


def h_generators(ctx: FieldCtx) -> list[AffMap]:
    """Generators of the line-preserving group H.

    Translations by an F_p-basis, the coordinate swap, every matrix
    ((a, b), (b, -a)) with a^2 + b^2 a nonzero square, and the Frobenius map.
    For q in {5, 9} the list is completed by the origin-fixing semilinear maps
    found by :func:`semilinear_stabilizer` that the standard ones miss.
    """
    if ctx.q % 2 == 0:
        raise GroupError("H is only described for odd q")
    f = ctx
    gens = []
    for j in range(f.r):
        e = f.p**j
        gens.append(translation(f, (e, 0)))
        gens.append(translation(f, (0, e)))
    gens.append(AffMap(f, 0, (0, 1, 1, 0)))
    for a in range(f.q):
        for b in range(f.q):
            n = f.add(f.mul(a, a), f.mul(b, b))
            if n != 0 and f.is_square(n):
                gens.append(AffMap(f, 0, (a, b, b, f.neg(a))))
    if f.r > 1:
        gens.append(AffMap(f, 1))
    if f.q in (5, 9):
        gens.extend(semilinear_stabilizer(f))
    return gens


def semilinear_stabilizer(ctx: FieldCtx) -> list[AffMap]:
    """All x -> M frob^k(x) that keep integral distances (brute force over GL(2, q))."""
    f = ctx
    q = f.q
    if q > 13 and not (f.r > 1 and q <= 27):
        raise GroupError("exhaustive GL(2, q) scan limited to small q")
    t = plane_tables(f)
    S = np.flatnonzero(t.integral)
    quad = np.array(list(itertools.product(range(q), repeat=4)), dtype=np.int64)
    a, b, c, d = quad.T
    mt, at, st = f.mul_table, f.add_table, f.sub_table
    det = st[mt[a, d], mt[b, c]]
    quad = quad[det != 0]
    a, b, c, d = (col[:, None] for col in quad.T)
    out = []
    for k in range(f.r):
        fr = f.frob_table(k) if f.r > 1 else np.arange(q)
        fx, fy = fr[t.xs[S]][None, :], fr[t.ys[S]][None, :]
        x = at[mt[a, fx], mt[b, fy]]
        y = at[mt[c, fx], mt[d, fy]]
        ok = t.integral[x * q + y].all(axis=1)
        for row in quad[ok]:
            out.append(AffMap(f, k, tuple(int(v) for v in row)))
    return out


class PermGroup:
    """Translations times an explicit origin stabiliser ``linear`` (m x q^2)."""

    def __init__(self, ctx: FieldCtx, linear: np.ndarray, maps: list[AffMap] | None = None,
                 generators: Sequence = ()):
        self.field = ctx
        self.linear = np.ascontiguousarray(linear, dtype=np.int32)
        self.maps = maps
        self.generators = list(generators)

    @property
    def stabilizer_order(self) -> int:
        return self.linear.shape[0]

    @property
    def order(self) -> int:
        return self.field.q ** 2 * self.stabilizer_order

    @property
    def is_affine(self) -> bool:
        return self.maps is not None

    def element(self, h: int, anchor: int) -> np.ndarray:
        """Permutation x -> L[h](x) - L[h](anchor)."""
        t = plane_tables(self.field)
        row = self.linear[h]
        return t.diff(row, row[anchor]).astype(np.int32)

    def __repr__(self):
        return f"PermGroup(q={self.field.q}, order={self.order})"


def _is_translation_perm(t, perm: np.ndarray) -> bool:
    return bool((perm == t.add[np.arange(t.n), perm[0]]).all())


def close_group(gens: Iterable, cap: int = 10**6) -> PermGroup:
    """Close generators (AffMaps or permutation arrays) into a PermGroup.

    Generators must include an F_p-basis of translations; the others are
    split into a translation and an origin-fixing part.  The stabiliser is
    closed breadth-first, adding only generators not yet contained.  The
    product structure T * L is verified before returning.
    """
    gens = list(gens)
    if not gens:
        raise GroupError("no generators")
    ctx = next(g.field for g in gens if isinstance(g, AffMap)) if any(isinstance(g, AffMap) for g in gens) else None
    if ctx is None:
        raise GroupError("at least the translations must be given as AffMaps")
    t = plane_tables(ctx)
    n = t.n
    affine = all(isinstance(g, AffMap) for g in gens)
    shifts = []
    lin_gens = []  # (perm, AffMap | None)
    for g in gens:
        if isinstance(g, AffMap):
            if g.is_translation:
                shifts.append(g.shift)
                continue
            lin = AffMap(ctx, g.frob, g.matrix)
            lin_gens.append((lin.perm(), lin))
            if g.shift != (0, 0):
                shifts.append(g.shift)
        else:
            perm = np.asarray(g, dtype=np.int32)
            if sorted(perm.tolist()) != list(range(n)):
                raise GroupError("generator is not a permutation of the plane")
            if _is_translation_perm(t, perm):
                shifts.append(divmod(int(perm[0]), ctx.q))
                continue
            v = int(perm[0])
            lin_gens.append((t.diff(perm, v).astype(np.int32), None))
            if v:
                shifts.append(divmod(v, ctx.q))

    # translation subgroup: additive closure of the shift vectors
    span = {0}
    frontier = [0]
    shift_codes = [x * ctx.q + y for x, y in shifts]
    while frontier:
        nxt = []
        for c in frontier:
            for s in shift_codes:
                d = int(t.add[c, s])
                if d not in span:
                    span.add(d)
                    nxt.append(d)
        frontier = nxt
    if len(span) != n:
        raise GroupError("generators do not contain all translations")

    ident = np.arange(n, dtype=np.int32)
    elems = [ident]
    maps = [AffMap(ctx)] if affine else None
    index = {ident.tobytes(): 0}
    used: list[tuple[np.ndarray, AffMap | None]] = []
    for perm, amap in lin_gens:
        if perm.tobytes() in index:
            continue
        used.append((perm, amap))
        frontier = list(range(len(elems)))
        while frontier:
            nxt = []
            for i in frontier:
                for gp, gm in used:
                    x = gp[elems[i]]
                    key = x.tobytes()
                    if key in index:
                        continue
                    index[key] = len(elems)
                    elems.append(x)
                    if maps is not None:
                        maps.append(gm.compose(maps[i]))
                    nxt.append(len(elems) - 1)
                    if len(elems) > cap:
                        raise GroupError(f"stabiliser exceeds cap {cap}")
            frontier = nxt

    # T * L is a group iff conjugating translations by generators stays in T * L
    basis = [x * ctx.q + y for x, y in shifts] or [1]
    for gp, _ in used:
        for s in basis:
            moved = gp[t.add[np.arange(n), s]]
            back = t.diff(moved, moved[0]).astype(np.int32)
            if back.tobytes() not in index:
                raise GroupError("translations times stabiliser is not closed")
    return PermGroup(ctx, np.stack(elems), maps, gens)


class CanonicalForm(NamedTuple):
    codes: tuple[int, ...]

    @property
    def key(self) -> bytes:
        return np.asarray(self.codes, dtype=">i4").tobytes()


def _flatten(sets: Sequence[Sequence[int]]):
    offsets = np.zeros(len(sets) + 1, dtype=np.int64)
    offsets[1:] = np.cumsum([len(s) for s in sets])
    flat = np.fromiter(itertools.chain.from_iterable(sets), dtype=np.int32, count=int(offsets[-1]))
    return flat, offsets


def canonical_batch(group: PermGroup, sets: Sequence[Sequence[int]]):
    """Canonical code tuples and set-stabiliser orders for many sets at once."""
    if not sets:
        return [], []
    t = plane_tables(group.field)
    flat, offsets = _flatten(sets)
    out, stab = kernels.canon_batch(group.linear, t.sub, flat, offsets)
    forms = [tuple(out[offsets[i]:offsets[i + 1]].tolist()) for i in range(len(sets))]
    return forms, stab.tolist()


def canonical_form(group: PermGroup, P: PointSet) -> CanonicalForm:
    forms, _ = canonical_batch(group, [P.codes])
    return CanonicalForm(forms[0])


def aut_order_of_set(group: PermGroup, P: PointSet) -> int:
    """Order of the setwise stabiliser of P in the group."""
    _, stab = canonical_batch(group, [P.codes])
    return int(stab[0])


def canonizing_element(group: PermGroup, P: PointSet) -> np.ndarray:
    """A group element (as a permutation) mapping P onto its canonical form."""
    t = plane_tables(group.field)
    pts = np.asarray(P.codes, dtype=np.int64)
    target = np.asarray(canonical_form(group, P).codes)
    imgs = group.linear[:, pts]
    for h in range(group.stabilizer_order):
        for a in range(len(pts)):
            if np.array_equal(np.sort(t.sub[imgs[h], imgs[h, a]]), target):
                return group.element(h, int(pts[a]))
    raise GroupError("canonical image not reached")  # pragma: no cover


def mapping_element(group: PermGroup, P: PointSet, Q: PointSet) -> np.ndarray | None:
    """A group element g with g(P) = Q, or None when P and Q are not equivalent."""
    if canonical_form(group, P) != canonical_form(group, Q):
        return None
    gp = canonizing_element(group, P)
    gq = canonizing_element(group, Q)
    inv_q = np.empty_like(gq)
    inv_q[gq] = np.arange(len(gq), dtype=gq.dtype)
    return inv_q[gp]


def normalize_pair(group: PermGroup, p1: int, p2: int):
    """An element sending p1 to the origin and p2 to (1, 0), or to (1, omega) for vanishing pairs.

    Returns an AffMap for affine groups, otherwise a permutation array.
    """
    f = group.field
    t = plane_tables(f)
    if p1 == p2:
        raise ValueError("points coincide")
    d = int(t.diff(p2, p1))
    if not t.integral[d]:
        raise ValueError("pair is not at integral distance")
    target = f.q if t.norm[d] != 0 else f.q + f.omega
    L = group.linear
    hits = np.flatnonzero(t.diff(L[:, p2], L[:, p1]) == target)
    if not len(hits):
        raise GroupError("pair cannot be normalised in this group")
    h = int(hits[0])
    if group.maps is None:
        return group.element(h, p1)
    m = group.maps[h]
    img = m.apply(p1)
    x, y = divmod(img, f.q)
    return translation(f, (f.neg(x), f.neg(y))).compose(m)


def is_automorphism(adj: np.ndarray, perm: np.ndarray) -> bool:
    return bool(np.array_equal(adj[np.ix_(perm, perm)], adj))


def h_order_formula(q: int, r: int) -> int:
    if q == 5:
        return 800
    if q == 9:
        return 31104
    return q * q * (q - 1) ** 2 * r if q % 4 == 1 else q * q * (q - 1) * (q + 1) * r


def g_order_formula(q: int, r: int) -> int:
    if q == 5:
        return 28800
    if q == 9:
        return 186624
    return q * q * (q - 1) ** 2 * r * r if q % 4 == 1 else q * q * (q - 1) * (q + 1) * r * r


@functools.lru_cache(maxsize=None)
def h_group(ctx: FieldCtx) -> PermGroup:
    return close_group(h_generators(ctx))


@functools.lru_cache(maxsize=None)
def classification_group(ctx: FieldCtx, ir_max_q: int = CLASSIFY_IR_MAX_Q) -> PermGroup:
    """The full automorphism group G used to decide isomorphism of point sets.

    For primes other than 5 this is H.  Otherwise H is extended by the
    origin-fixing automorphisms found by the individualisation-refinement
    engine, and the closure must reach the order that engine reports.
    """
    from .igraph import build_graph
    from .refine import automorphism_group

    H = h_group(ctx)
    if ctx.r == 1 and ctx.q != 5:
        return H
    if ctx.q > ir_max_q:
        raise GroupError(f"q = {ctx.q} needs the refinement engine; raise ir_max_q to at least {ctx.q}")
    res = automorphism_group(build_graph(ctx).adj)
    if res.base[0] != 0:
        raise GroupError("refinement base must start at the origin")  # pragma: no cover
    G = close_group(list(h_generators(ctx)) + list(res.stabilizer_generators))
    if G.order != res.order:
        raise GroupError(f"closure gave {G.order}, refinement gave {res.order}")
    return G
