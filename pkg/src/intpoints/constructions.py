"""Explicit maximal integral point sets: the circle and line families and the
sporadic examples for q = 11, 19, 23."""
from __future__ import annotations

from dataclasses import dataclass

from .field import FieldCtx, Gauss, gmul, gpow, gscale, unit_circle
from .plane import PointSet


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class NamedConstruction:
    name: str
    pointset: PointSet
    expected_size: int

    def __post_init__(self):
        if len(self.pointset) != self.expected_size:
            raise ConstructionError(
                f"{self.name}: built {len(self.pointset)} points, expected {self.expected_size}")


def _odd(ctx: FieldCtx):
    if ctx.q % 2 == 0:
        raise ConstructionError("constructions need odd q")


def circle_set(ctx: FieldCtx) -> NamedConstruction:
    """Even powers of the unit-circle generator together with the origin."""
    _odd(ctx)
    uc = unit_circle(ctx)
    pts = [uc.elements[i] for i in range(0, uc.order, 2)] + [Gauss(0, 0)]
    size = (ctx.q + 1) // 2 if ctx.q % 4 == 1 else (ctx.q + 3) // 2
    return NamedConstruction("circle", PointSet(ctx, pts), size)


def line_set(ctx: FieldCtx) -> NamedConstruction:
    """Points (u, 0) with u^2 + 1 a square, plus the mirror pair (0, 1), (0, -1)."""
    _odd(ctx)
    if ctx.q < 7:
        raise ConstructionError("line construction needs q >= 7")
    f = ctx
    pts = [(u, 0) for u in range(f.q) if f.is_square(f.add(f.mul(u, u), 1))]
    pts += [(0, 1), (0, f.minus_one)]
    size = (f.q + 3) // 2 if f.q % 4 == 3 else (f.q + 5) // 2
    return NamedConstruction("line", PointSet(f, pts), size)


def vanishing_line_set(ctx: FieldCtx) -> NamedConstruction:
    """The line construction placed on the vanishing line y = wx (q = 1 mod 4).

    Along an isotropic line the mirror pair lies on the other vanishing
    direction; the trace is then u (1, w) for u a square (or zero), and the
    set extends to {0} u (1, +-w) * squares.
    """
    _odd(ctx)
    f = ctx
    if f.omega is None:
        raise ConstructionError("no vanishing line: -1 is not a square")
    w = f.omega
    pts = [(u, f.mul(u, w)) for u in range(f.q) if u == 0 or f.is_square(u)]
    pts += [(1, f.neg(w)), (f.minus_one, w)]
    return NamedConstruction("vanishing-line", PointSet(f, pts), (f.q + 5) // 2)


def vanishing_cross(ctx: FieldCtx) -> PointSet:
    """{0} together with (1, +-w) times the nonzero squares."""
    f = ctx
    if f.omega is None:
        raise ConstructionError("no vanishing line: -1 is not a square")
    sq = [s for s in range(1, f.q) if f.is_square(s)]
    pts = [(0, 0)] + [(s, f.mul(s, f.omega)) for s in sq] + [(s, f.mul(s, f.neg(f.omega))) for s in sq]
    return PointSet(f, pts)


def _subgroup(ctx: FieldCtx, step: int) -> list[Gauss]:
    """The subgroup generated by z^step."""
    uc = unit_circle(ctx)
    return [uc.elements[i] for i in range(0, uc.order, step)]


def _scaled(ctx: FieldCtx, c: int, zs) -> list[Gauss]:
    return [gscale(ctx, ctx.from_int(c), z) for z in zs]


# coordinate lists read off the figures (x to the right, y upwards)
FIGURE_SETS: dict[str, tuple[int, list[tuple[int, int]]]] = {
    "sporadic-1": (23, [(0, 0), (0, 22), (22, 0), (0, 1), (1, 0), (4, 19), (19, 19), (19, 4), (4, 4),
                        (0, 14), (14, 0), (0, 9), (9, 0)]),
    "sporadic-2": (23, [(0, 0), (11, 15), (11, 8), (1, 0), (1, 7), (21, 0), (1, 16), (3, 21), (17, 0),
                        (3, 2), (19, 5), (19, 18), (8, 0)]),
    "sporadic-3": (19, [(0, 0), (7, 3), (2, 4), (2, 15), (7, 16), (1, 0), (2, 9), (6, 12), (6, 7),
                        (2, 10), (3, 0)]),
    "sporadic-4": (19, [(0, 0), (0, 1), (0, 18), (4, 0), (4, 2), (4, 17), (5, 0), (14, 0), (15, 0),
                        (15, 2), (15, 17)]),
    "sporadic-5": (11, [(0, 0), (0, 1), (0, 10), (2, 0), (3, 5), (3, 6), (6, 0)]),
}

SPORADIC_Q = {1: 23, 2: 23, 3: 19, 4: 19, 5: 11}


def figure_set(ctx: FieldCtx, name: str) -> PointSet:
    q, pts = FIGURE_SETS[name]
    if ctx.q != q or ctx.r != 1:
        raise ConstructionError(f"{name} lives over F_{q}")
    return PointSet(ctx, pts)


def sporadic(ctx: FieldCtx, index: int) -> NamedConstruction:
    """Sporadic examples of size (q + 3) / 2; 4 and 5 are given only by coordinates."""
    if SPORADIC_Q.get(index) != ctx.q or ctx.r != 1:
        raise ConstructionError(f"no sporadic-{index} over F_{ctx.q}")
    name = f"sporadic-{index}"
    origin = [Gauss(0, 0)]
    if index == 1:
        # the middle term is twisted by z^3, like the z^4 cosets of sporadic-2;
        # without the twist 3 and 9i are at non-square distance
        h = _subgroup(ctx, 6)
        z3 = gpow(ctx, unit_circle(ctx).generator, 3)
        coset = [gmul(ctx, z3, z) for z in h]
        pts = origin + _scaled(ctx, 1, h) + _scaled(ctx, 3, coset) + _scaled(ctx, 9, h)
    elif index == 2:
        h = _subgroup(ctx, 8)
        z4 = gpow(ctx, unit_circle(ctx).generator, 4)
        coset = [gmul(ctx, z4, z) for z in h]
        pts = (origin + _scaled(ctx, 1, h) + _scaled(ctx, 2, coset)
               + _scaled(ctx, 6, coset) + _scaled(ctx, 8, h))
    elif index == 3:
        h = _subgroup(ctx, 4)
        pts = origin + _scaled(ctx, 1, h) + _scaled(ctx, 3, h)
    else:
        return NamedConstruction(name, figure_set(ctx, name), (ctx.q + 3) // 2)
    return NamedConstruction(name, PointSet(ctx, pts), (ctx.q + 3) // 2)


def construct(ctx: FieldCtx, kind: str) -> NamedConstruction:
    if kind == "circle":
        return circle_set(ctx)
    if kind == "line":
        return line_set(ctx)
    if kind == "vanishing-line":
        return vanishing_line_set(ctx)
    if kind.startswith("sporadic-") and kind[9:].isdigit():
        return sporadic(ctx, int(kind[9:]))
    raise ConstructionError(f"unknown construction {kind!r}")


def count_second_largest_classes(ctx: FieldCtx, classification=None) -> int:
    """Number of classes of size (q + 3) / 2 for q = 3 (mod 4)."""
    if ctx.q % 4 != 3:
        raise ConstructionError("defined for q = 3 (mod 4)")
    if classification is None:
        from .search import classify
        classification = classify(ctx)
    return classification.table.rows.get((ctx.q + 3) // 2, 0)
