import pytest

from intpoints.field import field_of_order, make_field
from intpoints.plane import (INF, DirectionClass, PlaneError, Point, PointSet, classify_direction, direction,
                             direction_bound, directions_of, integral_pair, integral_set, is_collinear,
                             max_collinear, plane_tables, pyth_triples, pyth_triples_bruteforce, sqdist)


def test_point_codes_round_trip():
    f = make_field(7)
    for c in range(49):
        assert Point.from_code(f, c).code == c
    assert Point(3, 5, f).code == 26


def test_pointset_normalises_input():
    f = make_field(5)
    P = PointSet(f, [(1, 2), Point(1, 2, f), 0, (0, 0)])
    assert P.codes == (0, 7)
    assert len(P) == 2 and Point(1, 2, f) in P
    with pytest.raises(PlaneError):
        PointSet(f, [(5, 0)])
    with pytest.raises(PlaneError):
        PointSet(f, [Point(0, 0, make_field(7))])


def test_sqdist_and_integrality():
    f = make_field(7)
    u, v = Point(0, 0, f), Point(1, 1, f)
    assert sqdist(u, v) == 2
    assert integral_pair(u, v)  # 2 = 3^2 in F_7
    assert not integral_pair(u, Point(1, 2, f))  # 5 is not a square


def test_plane_tables_match_scalar_arithmetic():
    f = make_field(3, 2)
    t = plane_tables(f)
    for u in range(0, 81, 7):
        for v in range(0, 81, 5):
            pu, pv = Point.from_code(f, u), Point.from_code(f, v)
            d = t.sub[u, v]
            assert d == f.sub(pu.x, pv.x) * 9 + f.sub(pu.y, pv.y)
            assert t.diff(u, v) == d
            assert t.integral[d] == integral_pair(pu, pv)


def test_directions():
    f = make_field(13)
    o = Point(0, 0, f)
    assert direction(o, Point(0, 4, f)) is INF
    assert classify_direction(f, INF) is DirectionClass.INTEGRAL
    assert classify_direction(f, f.omega) is DirectionClass.VANISHING
    assert classify_direction(f, 0) is DirectionClass.INTEGRAL
    with pytest.raises(PlaneError):
        direction(o, o)
    assert direction_bound(f) == 8
    assert direction_bound(make_field(11)) == 6


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13, 25, 27])
def test_triples_match_brute_force(q):
    f = field_of_order(q)
    total = 0
    for c in range(q):
        got = pyth_triples(f, c)
        assert sorted(got) == sorted(pyth_triples_bruteforce(f, c))
        total += len(got)
        if c:
            assert len(got) == (q - 1 if q % 4 == 1 else q + 1)
    assert total == q * q


def test_vanishing_triples_include_non_squares():
    f = make_field(13)
    zero = pyth_triples(f, 0)
    assert len(zero) == 2 * 13 - 1
    # t = 2 is a non-square in F_13 and still gives a^2 + b^2 = 0
    assert (2, f.mul(2, f.omega), 0) in zero
    assert pyth_triples(make_field(7), 0) == [(0, 0, 0)]


def test_collinearity():
    f = make_field(11)
    axis = PointSet(f, [(x, 0) for x in range(11)])
    assert is_collinear(axis) and max_collinear(axis) == 11
    assert directions_of(axis) == {0}
    tri = PointSet(f, [(0, 0), (1, 0), (0, 1)])
    assert max_collinear(tri) == 2
    assert len(directions_of(tri)) == 3


def test_axis_line_is_integral():
    for q in (7, 9, 13):
        f = field_of_order(q)
        assert integral_set(PointSet(f, [(x, 0) for x in range(q)]))
