"""Points of F_q^2, squared distances, directions and Pythagorean triples.

A point ``(x, y)`` has the integer code ``x * q + y``; point sets are kept as
sorted tuples of codes.  :class:`Point` and :class:`PointSet` carry their
field so that mixing planes is caught early.
"""
from __future__ import annotations

import enum
import functools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .field import FieldCtx, FieldError, Gauss


class PlaneError(ValueError):
    pass


@dataclass(frozen=True)
class Point:
    x: int
    y: int
    field: FieldCtx

    def __repr__(self):
        return f"Point({self.x}, {self.y})"

    @property
    def code(self) -> int:
        return self.x * self.field.q + self.y

    @classmethod
    def from_code(cls, ctx: FieldCtx, code: int) -> Point:
        x, y = divmod(int(code), ctx.q)
        return cls(x, y, ctx)

    def as_gauss(self) -> Gauss:
        return Gauss(self.x, self.y)


class PointSet:
    """A finite subset of F_q^2 stored as strictly increasing point codes."""

    __slots__ = ("field", "codes")

    def __init__(self, ctx: FieldCtx, points: Iterable = ()):
        n = ctx.q * ctx.q
        codes = set()
        for pt in points:
            if isinstance(pt, Point):
                if pt.field != ctx:
                    raise PlaneError("point from a different field")
                c = pt.code
            elif isinstance(pt, (tuple, list, Gauss)):
                x, y = pt
                if not (0 <= x < ctx.q and 0 <= y < ctx.q):
                    raise PlaneError(f"coordinate out of range: {pt}")
                c = x * ctx.q + y
            else:
                c = int(pt)
            if not 0 <= c < n:
                raise PlaneError(f"point code out of range: {c}")
            codes.add(c)
        self.field = ctx
        self.codes = tuple(sorted(codes))

    @classmethod
    def from_codes(cls, ctx: FieldCtx, codes: Iterable[int]) -> PointSet:
        return cls(ctx, (int(c) for c in codes))

    def __len__(self):
        return len(self.codes)

    def __iter__(self):
        return (Point.from_code(self.field, c) for c in self.codes)

    def __contains__(self, item):
        c = item.code if isinstance(item, Point) else int(item)
        return c in set(self.codes)

    def __eq__(self, other):
        return isinstance(other, PointSet) and self.field == other.field and self.codes == other.codes

    def __hash__(self):
        return hash((self.field.q, self.codes))

    def coords(self) -> list[tuple[int, int]]:
        q = self.field.q
        return [divmod(c, q) for c in self.codes]

    def __repr__(self):
        return f"PointSet(q={self.field.q}, {self.coords()})"


class PlaneTables:
    """Vectorised per-plane lookup tables, indexed by point code."""

    def __init__(self, ctx: FieldCtx):
        q = ctx.q
        self.field = ctx
        self.n = n = q * q
        codes = np.arange(n)
        self.xs = codes // q
        self.ys = codes % q
        sq = ctx.square_of
        self.norm = ctx.add_table[sq[self.xs], sq[self.ys]]
        # integral[c]: the vector with code c has square length
        self.integral = ctx.squares[self.norm]
        self.neg = ctx.neg_table[self.xs] * q + ctx.neg_table[self.ys]

    @functools.cached_property
    def sub(self) -> np.ndarray:
        """sub[u, v] = code of u - v (int32, n x n)."""
        q = self.field.q
        st = self.field.sub_table
        dx = st[self.xs[:, None], self.xs[None, :]]
        dy = st[self.ys[:, None], self.ys[None, :]]
        return (dx * q + dy).astype(np.int32)

    @functools.cached_property
    def add(self) -> np.ndarray:
        q = self.field.q
        at = self.field.add_table
        return (at[self.xs[:, None], self.xs[None, :]] * q
                + at[self.ys[:, None], self.ys[None, :]]).astype(np.int32)

    def diff(self, u, v):
        """Code of u - v for (arrays of) codes without the n x n table."""
        st = self.field.sub_table
        q = self.field.q
        return st[self.xs[u], self.xs[v]] * q + st[self.ys[u], self.ys[v]]

    def integral_row(self, u: int) -> np.ndarray:
        """Boolean mask of all points at integral distance to u (u included)."""
        return self.integral[self.diff(np.arange(self.n), u)]


@functools.lru_cache(maxsize=None)
def plane_tables(ctx: FieldCtx) -> PlaneTables:
    return PlaneTables(ctx)


def _check(u: Point, v: Point) -> FieldCtx:
    if u.field != v.field:
        raise PlaneError("points live in different planes")
    return u.field


def sqdist(u: Point, v: Point) -> int:
    """(u1 - v1)^2 + (u2 - v2)^2."""
    f = _check(u, v)
    dx, dy = f.sub(u.x, v.x), f.sub(u.y, v.y)
    return f.add(f.mul(dx, dx), f.mul(dy, dy))


def integral_pair(u: Point, v: Point) -> bool:
    return u.field.is_square(sqdist(u, v))


def integral_set(P: PointSet) -> bool:
    codes = np.array(P.codes, dtype=np.int64)
    if len(codes) < 2:
        return True
    t = plane_tables(P.field)
    d = t.diff(codes[:, None], codes[None, :])
    return bool(t.integral[d].all())


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
"""The vertical direction."""


class DirectionClass(enum.Enum):
    VANISHING = "vanishing"
    INTEGRAL = "integral"
    NON_INTEGRAL = "non-integral"


def direction(u: Point, v: Point):
    """Slope (y1 - y2)/(x1 - x2) as a field code, or INF for vertical pairs."""
    f = _check(u, v)
    if u == v:
        raise PlaneError("direction of a point with itself")
    dx = f.sub(u.x, v.x)
    if dx == 0:
        return INF
    return f.div(f.sub(u.y, v.y), dx)


def classify_direction(ctx: FieldCtx, d) -> DirectionClass:
    if d is INF:
        return DirectionClass.INTEGRAL
    s = ctx.add(1, ctx.mul(d, d))
    if s == 0:
        return DirectionClass.VANISHING
    return DirectionClass.INTEGRAL if ctx.is_square(s) else DirectionClass.NON_INTEGRAL


def _direction_code(ctx: FieldCtx, dx: int, dy: int):
    return INF if dx == 0 else ctx.div(dy, dx)


def directions_of(P: PointSet) -> set:
    f = P.field
    pts = P.coords()
    out = set()
    for i, (x1, y1) in enumerate(pts):
        for x2, y2 in pts[i + 1:]:
            out.add(_direction_code(f, f.sub(x1, x2), f.sub(y1, y2)))
    return out


def direction_bound(ctx: FieldCtx) -> int:
    """Largest number of directions an integral set may determine (odd q)."""
    return (ctx.q + 3) // 2 if ctx.omega is not None else (ctx.q + 1) // 2


class PythTriple(NamedTuple):
    a: int
    b: int
    c: int


def pyth_triples(ctx: FieldCtx, c: int) -> list[PythTriple]:
    """All (a, b) with a^2 + b^2 = c^2, from the parametric description."""
    if ctx.q % 2 == 0:
        raise FieldError("Pythagorean triples are parametrised for odd q only")
    f = ctx
    if c == 0:
        if f.omega is None:
            return [PythTriple(0, 0, 0)]
        out = {PythTriple(t, f.mul(s, f.mul(t, f.omega)), 0)
               for t in f.elements() for s in (1, f.minus_one)}
        return sorted(out)
    out = {PythTriple(c, 0, c), PythTriple(f.neg(c), 0, c)}
    for t in range(1, f.q):
        t2 = f.mul(t, t)
        den = f.add(t2, 1)
        if den == 0:  # t^2 = -1
            continue
        k = f.div(c, den)
        out.add(PythTriple(f.mul(f.sub(t2, 1), k), f.mul(f.add(t, t), k), c))
    return sorted(out)


def pyth_triples_bruteforce(ctx: FieldCtx, c: int) -> list[PythTriple]:
    sq = ctx.square_of
    target = sq[c]
    a = np.repeat(np.arange(ctx.q), ctx.q)
    b = np.tile(np.arange(ctx.q), ctx.q)
    hit = ctx.add_table[sq[a], sq[b]] == target
    return [PythTriple(int(x), int(y), c) for x, y in zip(a[hit], b[hit])]


def max_collinear(P: PointSet) -> int:
    """Largest number of points of P on one affine line."""
    f = P.field
    pts = P.coords()
    if len(pts) <= 2:
        return len(pts)
    best = 2
    for i, (x1, y1) in enumerate(pts):
        counts = Counter(_direction_code(f, f.sub(x2, x1), f.sub(y2, y1)) for x2, y2 in pts[i + 1:])
        if counts:
            best = max(best, 1 + max(counts.values()))
    return best


def is_collinear(P: PointSet) -> bool:
    return max_collinear(P) == len(P)
