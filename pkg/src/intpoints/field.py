"""Arithmetic in F_q = F_p[a] and in the ring F_q[i], i^2 = -1.

Field elements are plain ints: the element c_0 + c_1 a + ... + c_{r-1} a^{r-1}
has code c_0 + c_1 p + ... + c_{r-1} p^{r-1}.  That code order is the total
order used wherever ties have to be broken.  Elements of F_q[i] are
``Gauss(re, im)`` pairs of codes; a Gauss value doubles as a point of the
plane via ``re * q + im``.
"""
from __future__ import annotations

import functools
import itertools
from typing import NamedTuple

import numpy as np

MAX_Q = 1 << 16


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, r)`` with ``q = p**r`` or None if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            r = 0
            while q % p == 0:
                q //= p
                r += 1
            return (p, r) if q == 1 and is_prime(p) else None
    return None


# --- polynomials over F_p, coefficient lists lowest degree first ------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _poly_trim(list(a))
    inv_lead = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _poly_trim(a)
    return a


def _monic_polys(p: int, deg: int):
    for tail in itertools.product(range(p), repeat=deg):
        yield list(reversed(tail)) + [1]


def poly_is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_mod(poly, f, p):
                return False
    return True


def smallest_irreducible(p: int, r: int) -> list[int]:
    """Monic irreducible of degree r whose low coefficients have the smallest code."""
    for code in range(p**r):
        low = [(code // p**i) % p for i in range(r)]
        poly = low + [1]
        if poly_is_irreducible(poly, p):
            return poly
    raise FieldError(f"no irreducible polynomial of degree {r} over F_{p}")


class Gauss(NamedTuple):
    """The element ``re + im*i`` of F_q[i]."""

    re: int
    im: int


class FieldCtx:
    """Immutable description of F_q with lookup tables.

    Construct through :func:`make_field`, which caches one instance per q.
    """

    def __init__(self, p: int, r: int):
        self.p = p
        self.r = r
        self.q = q = p**r
        self.irreducible = tuple(smallest_irreducible(p, r)) if r > 1 else (0, 1)
        if r > 1 and not poly_is_irreducible(list(self.irreducible), p):
            raise FieldError("defining polynomial is reducible")

        codes = np.arange(q, dtype=np.int64)
        self._digits = np.stack([(codes // p**i) % p for i in range(r)], axis=1)
        self._place = p ** np.arange(r, dtype=np.int64)
        if r == 1:
            self._neg = (-codes) % p
        else:
            self._neg = ((-self._digits) % p) @ self._place

        self._exp, self._log = self._build_log_tables()
        self.primitive = int(self._exp[1]) if q > 2 else 1

        sq = np.array([self.mul(a, a) for a in range(q)], dtype=np.int64)
        self.square_of = sq
        self.squares = np.zeros(q, dtype=bool)
        self.squares[sq] = True
        self.minus_one = int(self._neg[1])
        self.omega = None
        if q % 2 == 1 and q % 4 == 1:
            self.omega = int(np.flatnonzero(sq == self.minus_one)[0])

    # -- construction helpers -------------------------------------------------

    def _poly_mulmod(self, a: int, b: int) -> int:
        p, r = self.p, self.r
        da = [(a // p**i) % p for i in range(r)]
        db = [(b // p**i) % p for i in range(r)]
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        rem = _poly_mod([c % p for c in prod], list(self.irreducible), p)
        return sum(c * p**i for i, c in enumerate(rem))

    def _build_log_tables(self) -> tuple[np.ndarray, np.ndarray]:
        q, p = self.q, self.p
        exp = np.zeros(q, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        if q == 2:
            exp[0] = 1
            log[1] = 0
            return exp, log
        mul = (lambda a, b: a * b % p) if self.r == 1 else self._poly_mulmod
        for g in range(2 if q > 2 else 1, q):
            x, seen = 1, 0
            for k in range(q - 1):
                exp[k] = x
                x = mul(x, g)
                seen += 1
                if x == 1:
                    break
            if seen == q - 1:
                break
        else:  # pragma: no cover
            raise FieldError("no primitive element")
        exp[q - 1] = 1
        log[exp[: q - 1]] = np.arange(q - 1)
        return exp, log

    # -- scalar arithmetic ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a + b) % self.p
        return int(((self._digits[a] + self._digits[b]) % self.p) @ self._place)

    def neg(self, a: int) -> int:
        return int(self._neg[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, int(self._neg[b]))

    def mul(self, a: int, b: int) -> int:
        if self.r == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return int(self._exp[(self._log[a] + self._log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        if self.r == 1:
            return pow(a, self.p - 2, self.p)
        return int(self._exp[(-self._log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 1 if e == 0 else 0
        return int(self._exp[(self._log[a] * e) % (self.q - 1)])

    def frob(self, a: int, k: int = 1) -> int:
        """a ** (p ** k)."""
        return self.pow(a, self.p ** (k % self.r))

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self._digits[a])

    def from_coeffs(self, cs) -> int:
        cs = list(cs)
        if len(cs) != self.r or any(not 0 <= c < self.p for c in cs):
            raise FieldError(f"need {self.r} coefficients in [0, {self.p - 1}]")
        return sum(c * self.p**i for i, c in enumerate(cs))

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_q."""
        return n % self.p

    def is_square(self, a: int) -> bool:
        return bool(self.squares[a])

    def elements(self) -> range:
        return range(self.q)

    # -- vectorised tables, cached ---------------------------------------------

    @functools.cached_property
    def add_table(self) -> np.ndarray:
        if self.r == 1:
            a = np.arange(self.q)
            return (a[:, None] + a[None, :]) % self.p
        d = self._digits
        return (((d[:, None, :] + d[None, :, :]) % self.p) @ self._place).astype(np.int64)

    @functools.cached_property
    def sub_table(self) -> np.ndarray:
        return self.add_table[:, self._neg]

    @functools.cached_property
    def mul_table(self) -> np.ndarray:
        q = self.q
        if self.r == 1:
            a = np.arange(q)
            return (a[:, None] * a[None, :]) % self.p
        t = np.zeros((q, q), dtype=np.int64)
        la = self._log[1:]
        t[1:, 1:] = self._exp[(la[:, None] + la[None, :]) % (q - 1)]
        return t

    @property
    def neg_table(self) -> np.ndarray:
        return self._neg

    def frob_table(self, k: int = 1) -> np.ndarray:
        e = self.p ** (k % self.r)
        out = np.zeros(self.q, dtype=np.int64)
        out[1:] = self._exp[(self._log[1:] * e) % (self.q - 1)]
        return out

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.r) == (other.p, other.r)

    def __hash__(self):
        return hash((self.p, self.r))

    def __repr__(self):
        return f"FieldCtx(q={self.q}, p={self.p}, r={self.r})"


def make_field(p: int, r: int = 1, max_q: int = MAX_Q) -> FieldCtx:
    """Return the (cached) field F_{p^r}."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if r < 1:
        raise FieldError("extension degree must be at least 1")
    if p**r > max_q:
        raise FieldError(f"q = {p}^{r} exceeds the bound {max_q}")
    return _make_field(p, r)


@functools.lru_cache(maxsize=None)
def _make_field(p: int, r: int) -> FieldCtx:
    return FieldCtx(p, r)


def field_of_order(q: int, max_q: int = MAX_Q) -> FieldCtx:
    pr = prime_power(q)
    if pr is None:
        raise FieldError(f"{q} is not a prime power")
    return make_field(*pr, max_q=max_q)


def is_square(ctx: FieldCtx, a: int) -> bool:
    return ctx.is_square(a)


def omega(ctx: FieldCtx) -> int | None:
    """Smallest-code square root of -1, or None when q is not 1 mod 4."""
    return ctx.omega


# --- F_q[i] ------------------------------------------------------------------

def gadd(ctx: FieldCtx, z: Gauss, w: Gauss) -> Gauss:
    return Gauss(ctx.add(z.re, w.re), ctx.add(z.im, w.im))


def gsub(ctx: FieldCtx, z: Gauss, w: Gauss) -> Gauss:
    return Gauss(ctx.sub(z.re, w.re), ctx.sub(z.im, w.im))


def gmul(ctx: FieldCtx, z: Gauss, w: Gauss) -> Gauss:
    m = ctx.mul
    return Gauss(ctx.sub(m(z.re, w.re), m(z.im, w.im)), ctx.add(m(z.re, w.im), m(z.im, w.re)))


def gscale(ctx: FieldCtx, c: int, z: Gauss) -> Gauss:
    return Gauss(ctx.mul(c, z.re), ctx.mul(c, z.im))


def gconj(ctx: FieldCtx, z: Gauss) -> Gauss:
    return Gauss(z.re, ctx.neg(z.im))


def gpow(ctx: FieldCtx, z: Gauss, e: int) -> Gauss:
    if e < 0:
        raise ValueError("negative exponent")
    out, base = Gauss(1, 0), z
    while e:
        if e & 1:
            out = gmul(ctx, out, base)
        base = gmul(ctx, base, base)
        e >>= 1
    return out


def gnorm(ctx: FieldCtx, z: Gauss) -> int:
    """z * conj(z) = re^2 + im^2."""
    return ctx.add(ctx.mul(z.re, z.re), ctx.mul(z.im, z.im))


def ginv(ctx: FieldCtx, z: Gauss) -> Gauss:
    n = gnorm(ctx, z)
    if n == 0:
        raise ZeroDivisionError(f"{z} is not a unit of F_q[i]")
    return gscale(ctx, ctx.inv(n), gconj(ctx, z))


def gcode(ctx: FieldCtx, z: Gauss) -> int:
    return z.re * ctx.q + z.im


def gdecode(ctx: FieldCtx, code: int) -> Gauss:
    return Gauss(*divmod(code, ctx.q))


def is_zero_divisor(ctx: FieldCtx, z: Gauss) -> bool:
    return z != (0, 0) and gnorm(ctx, z) == 0


class UnitCircle(NamedTuple):
    """N^{-1}(1) listed as successive powers of ``generator``."""

    elements: list[Gauss]
    generator: Gauss

    @property
    def order(self) -> int:
        return len(self.elements)


def _gorder(ctx: FieldCtx, z: Gauss, bound: int) -> int:
    w, k = z, 1
    while w != (1, 0):
        w = gmul(ctx, w, z)
        k += 1
        if k > bound:
            return 0
    return k


@functools.lru_cache(maxsize=None)
def _unit_circle(ctx: FieldCtx) -> UnitCircle:
    q = ctx.q
    sq = ctx.square_of
    x = np.repeat(np.arange(q), q)
    y = np.tile(np.arange(q), q)
    norms = ctx.add_table[sq[x], sq[y]]
    members = [Gauss(int(a), int(b)) for a, b in zip(x[norms == 1], y[norms == 1])]
    size = len(members)
    expected = q - 1 if q % 4 == 1 else q + 1
    if size != expected:
        raise FieldError(f"|N^-1(1)| = {size}, expected {expected}")
    for z in members:  # ordered by plane code
        if _gorder(ctx, z, size) == size:
            gen = z
            break
    else:
        raise FieldError("unit circle is not cyclic")
    elems = [Gauss(1, 0)]
    for _ in range(size - 1):
        elems.append(gmul(ctx, elems[-1], gen))
    return UnitCircle(elems, gen)


def unit_circle(ctx: FieldCtx) -> UnitCircle:
    """The cyclic group {z : z * conj(z) = 1} and its smallest-code generator."""
    if ctx.q % 2 == 0:
        raise FieldError("unit circle is only provided for odd q")
    return _unit_circle(ctx)


def rho(ctx: FieldCtx, t: int) -> Gauss:
    """Isomorphism F_q^* -> N^{-1}(1) for q = 1 mod 4."""
    if ctx.omega is None:
        raise FieldError("rho needs q = 1 (mod 4)")
    if t == 0:
        raise FieldError("rho is undefined at 0")
    t2 = ctx.mul(t, t)
    inv2t = ctx.inv(ctx.add(t, t))
    re = ctx.mul(ctx.add(1, t2), inv2t)
    im = ctx.mul(ctx.omega, ctx.mul(ctx.sub(1, t2), inv2t))
    return Gauss(re, im)
