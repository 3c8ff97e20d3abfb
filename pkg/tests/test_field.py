import pytest
from hypothesis import given, settings, strategies as st

from intpoints.field import (FieldError, Gauss, field_of_order, gconj, ginv, gmul, gnorm, is_prime, make_field,
                             prime_power, rho, smallest_irreducible, unit_circle)

ODD_Q = [3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31]


def test_prime_power_detection():
    assert prime_power(27) == (3, 3)
    assert prime_power(49) == (7, 2)
    assert prime_power(12) is None
    assert prime_power(1) is None
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def _has_root(poly, p):
    return any(sum(c * x**i for i, c in enumerate(poly)) % p == 0 for x in range(p))


def test_smallest_irreducible_is_first_by_code():
    # degree 2 and 3: irreducible iff no root in F_p
    for p, r in [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (7, 2), (5, 3)]:
        poly = smallest_irreducible(p, r)
        assert poly[-1] == 1 and len(poly) == r + 1
        assert not _has_root(poly, p)
        code = sum(c * p**i for i, c in enumerate(poly[:-1]))
        for smaller in range(code):
            cand = [(smaller // p**i) % p for i in range(r)] + [1]
            assert _has_root(cand, p)


def test_f9_model():
    f = make_field(3, 2)
    assert tuple(f.irreducible) == (1, 0, 1)  # x^2 + 1
    assert int(f.squares.sum()) == 5
    assert f.omega == 3


@pytest.mark.parametrize("q", ODD_Q + [4, 8, 16])
def test_field_axioms_and_squares(q):
    f = field_of_order(q)
    els = range(q)
    for a in els:
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
    # squares by brute force
    brute = {f.mul(a, a) for a in els}
    assert {a for a in els if f.is_square(a)} == brute
    assert len(brute) == ((q + 1) // 2 if q % 2 else q)


@pytest.mark.parametrize("q", ODD_Q)
def test_omega(q):
    f = field_of_order(q)
    roots = [a for a in range(q) if f.mul(a, a) == f.minus_one]
    if q % 4 == 1:
        assert f.omega == min(roots)
    else:
        assert roots == [] and f.omega is None


def test_known_square_sets():
    assert [a for a in range(7) if make_field(7).is_square(a)] == [0, 1, 2, 4]
    assert make_field(13).omega == 5
    assert make_field(5).omega == 2


def test_frobenius_is_a_field_automorphism():
    f = make_field(3, 3)
    for a in range(f.q):
        for b in range(0, f.q, 5):
            assert f.frob(f.mul(a, b)) == f.mul(f.frob(a), f.frob(b))
            assert f.frob(f.add(a, b)) == f.add(f.frob(a), f.frob(b))
    assert all(f.frob(a, 3) == a for a in range(f.q))


@pytest.mark.parametrize("q, order", [(7, 8), (13, 12), (9, 8), (27, 28), (25, 24), (3, 4)])
def test_unit_circle(q, order):
    f = field_of_order(q)
    uc = unit_circle(f)
    assert uc.order == order
    assert len(set(uc.elements)) == order
    assert all(gnorm(f, z) == 1 for z in uc.elements)


@pytest.mark.parametrize("q", [5, 13, 17, 25, 29])
def test_rho_is_an_isomorphism_onto_the_circle(q):
    f = field_of_order(q)
    circle = set(unit_circle(f).elements)
    image = [rho(f, t) for t in range(1, q)]
    assert set(image) == circle
    for s in range(1, q):
        for t in range(1, q, 3):
            assert rho(f, f.mul(s, t)) == gmul(f, rho(f, s), rho(f, t))


def test_rho_needs_a_square_root_of_minus_one():
    with pytest.raises(FieldError):
        rho(make_field(7), 1)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ODD_Q), st.integers(0, 10**6), st.integers(0, 10**6))
def test_norm_is_multiplicative(q, a, b):
    f = field_of_order(q)
    z = Gauss(a % q, (a // q) % q)
    w = Gauss(b % q, (b // q) % q)
    assert gnorm(f, gmul(f, z, w)) == f.mul(gnorm(f, z), gnorm(f, w))
    assert gnorm(f, z) == f.add(f.mul(z.re, z.re), f.mul(z.im, z.im))
    if gnorm(f, z):
        assert gmul(f, z, ginv(f, z)) == Gauss(1, 0)
    assert gconj(f, gconj(f, z)) == z


def test_bad_orders_rejected():
    with pytest.raises(FieldError):
        field_of_order(6)
    with pytest.raises(FieldError):
        make_field(4)
