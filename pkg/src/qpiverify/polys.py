"""Dense exact arithmetic in one variable q over the rationals.

A polynomial is a tuple of Fraction coefficients, index i holding the
coefficient of q**i; the trailing coefficient is nonzero and the zero
polynomial is the empty tuple.  Laurent polynomials carry an integer shift
(the minimum exponent), so their value is q**shift * body with body having a
nonzero constant term.

Everything here is immutable and pure; the cyclotomic cache is the only
shared state and lru_cache keeps it safe under the GIL.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Scalar = int | Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Poly:
    """Dense univariate polynomial over Fraction.

    >>> Poly([1, 1]) * Poly([1, -1])
    Poly('-q^2 + 1')
    >>> divmod(Poly([-1, 0, 0, 1]), Poly([-1, 1]))
    (Poly('q^2 + q + 1'), Poly('0'))
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def zero() -> Poly:
        return Poly()

    @staticmethod
    def one() -> Poly:
        return Poly([1])

    @staticmethod
    def monomial(coeff: Scalar, exp: int) -> Poly:
        if exp < 0:
            raise ValueError("Poly exponents must be nonnegative; use LaurentPoly")
        if coeff == 0:
            return Poly()
        return Poly([0] * exp + [coeff])

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def constant(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else _ZERO

    def valuation(self) -> int:
        """Index of the lowest nonzero coefficient (0 for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return 0

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> Poly:
        if self.is_zero():
            raise ValueError("cannot normalize the zero polynomial")
        lead = self.coeffs[-1]
        if lead == 1:
            return self
        return Poly([c / lead for c in self.coeffs])

    def shifted(self, m: int) -> Poly:
        """Multiply by q**m (m >= 0)."""
        if m < 0:
            raise ValueError("negative shift on Poly")
        if self.is_zero() or m == 0:
            return self
        return Poly((_ZERO,) * m + self.coeffs)

    def evaluate(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self) -> Poly:
        return Poly([-c for c in self.coeffs])

    def __add__(self, other) -> Poly:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Poly(
            a + b
            for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=_ZERO)
        )

    __radd__ = __add__

    def __sub__(self, other) -> Poly:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Poly(
            a - b
            for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=_ZERO)
        )

    def __rsub__(self, other) -> Poly:
        return -(self - other)

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly()
            return Poly([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        # Integer fast path: convolution over int is much cheaper than Fraction.
        if all(c.denominator == 1 for c in a) and all(c.denominator == 1 for c in b):
            ai = [c.numerator for c in a]
            bi = [c.numerator for c in b]
            out = [0] * (len(ai) + len(bi) - 1)
            for i, x in enumerate(ai):
                if x:
                    for j, y in enumerate(bi):
                        out[i + j] += x * y
            return Poly(out)
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of Poly by zero scalar")
            inv = _ONE / Fraction(other)
            return Poly([c * inv for c in self.coeffs])
        return NotImplemented

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power of a Poly")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        if not isinstance(other, Poly):
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return Poly(), self
        rem = list(self.coeffs)
        dcs = other.coeffs
        dn = len(dcs)
        inv_lead = _ONE / dcs[-1]
        quot = [_ZERO] * (len(rem) - dn + 1)
        for i in range(len(quot) - 1, -1, -1):
            f = rem[i + dn - 1] * inv_lead
            if f:
                quot[i] = f
                for j in range(dn):
                    rem[i + j] -= f * dcs[j]
        return Poly(quot), Poly(rem[: dn - 1])

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def divides(self, other: Poly) -> bool:
        if self.is_zero():
            return other.is_zero()
        return divmod(other, self)[1].is_zero()

    def __repr__(self) -> str:
        return f"Poly('{format_poly(self.coeffs)}')"


def _coerce(other):
    if isinstance(other, Poly):
        return other
    if isinstance(other, (int, Fraction)):
        return Poly([other])
    return NotImplemented


def format_poly(coeffs, var: str = "q") -> str:
    if not coeffs:
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = " - " if c < 0 else (" + " if parts else "")
        mag = abs(c)
        if i == 0:
            body = f"{mag}"
        else:
            term = var if i == 1 else f"{var}^{i}"
            if mag == 1:
                body = term
            elif isinstance(mag, Fraction) and mag.denominator != 1:
                body = f"({mag}){term}"
            else:
                body = f"{mag}{term}"
        if not parts and c < 0:
            sign = "-"
        parts.append(sign + body)
    return "".join(parts)


def _int_coeffs(p: Poly) -> list[int]:
    scale = 1
    for c in p.coeffs:
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    return [int(c * scale) for c in p.coeffs]


def _primitive(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    if not c:
        return c
    g = 0
    for v in c:
        g = math.gcd(g, v)
    if c[-1] < 0:
        g = -g
    return [v // g for v in c]


def _int_pseudo_rem(u: list[int], v: list[int]) -> list[int]:
    """Remainder of u by v over the integers, u scaled by powers of lc(v)."""
    u = list(u)
    dv = len(v) - 1
    lv = v[-1]
    while len(u) - 1 >= dv:
        top = u[-1]
        u = [lv * c for c in u]
        off = len(u) - 1 - dv
        for j in range(len(v)):
            u[off + j] -= top * v[j]
        u.pop()
        while u and u[-1] == 0:
            u.pop()
        if not u:
            break
    return u


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd, computed by a primitive pseudo-remainder sequence over the
    integers (the rational remainder sequence suffers coefficient blow-up
    already at desk-scale degrees)."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    u = _primitive(_int_coeffs(a))
    v = _primitive(_int_coeffs(b))
    if len(u) < len(v):
        u, v = v, u
    while v:
        u, v = v, _primitive(_int_pseudo_rem(u, v))
    return Poly(u).monic()


def poly_gcd_ext(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended Euclid: returns monic g and s, t with g = s*a + t*b."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    r0, r1 = a, b
    s0, s1 = Poly.one(), Poly.zero()
    t0, t1 = Poly.zero(), Poly.one()
    while not r1.is_zero():
        quot, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quot * s1
        t0, t1 = t1, t0 - quot * t1
    lead = r0.leading()
    g, s, t = r0 / lead, s0 / lead, t0 / lead
    assert g == s * a + t * b, "extended gcd certificate failed"
    return g, s, t


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    ds = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            ds.append(i)
            if i != n // i:
                ds.append(n // i)
        i += 1
    return tuple(sorted(ds))


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    if n == 1:
        return 1
    m, count = n, 0
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            count += 1
        p += 1
    if m > 1:
        count += 1
    return -1 if count % 2 else 1


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> Poly:
    """The n-th cyclotomic polynomial, by exact division of q**n - 1 by the
    cyclotomic polynomials of the proper divisors of n.

    >>> cyclotomic(1)
    Poly('q - 1')
    >>> cyclotomic(6)
    Poly('q^2 - q + 1')
    """
    if n < 1:
        raise ValueError("cyclotomic index must be >= 1")
    poly = Poly([-1] + [0] * (n - 1) + [1])
    for d in divisors(n):
        if d == n:
            continue
        poly, rem = divmod(poly, cyclotomic(d))
        assert rem.is_zero()
    return poly


@dataclass(frozen=True)
class LaurentPoly:
    """q**shift * body, with body carrying a nonzero constant term (or zero)."""

    body: Poly
    shift: int = 0

    def __post_init__(self):
        body, shift = self.body, self.shift
        if body.is_zero():
            shift = 0
        else:
            v = body.valuation()
            if v:
                body = Poly(body.coeffs[v:])
                shift += v
        object.__setattr__(self, "body", body)
        object.__setattr__(self, "shift", shift)

    @staticmethod
    def zero() -> LaurentPoly:
        return LaurentPoly(Poly())

    @staticmethod
    def one() -> LaurentPoly:
        return LaurentPoly(Poly.one())

    @staticmethod
    def monomial(coeff: Scalar, exp: int) -> LaurentPoly:
        return LaurentPoly(Poly([coeff]), exp)

    @staticmethod
    def from_poly(p: Poly) -> LaurentPoly:
        return LaurentPoly(p, 0)

    def is_zero(self) -> bool:
        return self.body.is_zero()

    def to_poly(self) -> Poly:
        """Fold the shift back in; requires shift >= 0."""
        if self.shift < 0:
            raise ValueError("Laurent value with negative exponents is not a Poly")
        return self.body.shifted(self.shift)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(-self.body, self.shift)

    def __add__(self, other) -> LaurentPoly:
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        base = min(self.shift, other.shift)
        a = self.body.shifted(self.shift - base)
        b = other.body.shifted(other.shift - base)
        return LaurentPoly(a + b, base)

    __radd__ = __add__

    def __sub__(self, other) -> LaurentPoly:
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return -(self - other)

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            return LaurentPoly(self.body * other, self.shift)
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return LaurentPoly(self.body * other.body, self.shift + other.shift)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            raise ValueError("negative power of a LaurentPoly")
        return LaurentPoly(self.body**n, self.shift * n)

    def evaluate(self, x):
        return self.body.evaluate(x) * Fraction(x) ** self.shift

    def __repr__(self) -> str:
        if self.shift == 0:
            return f"LaurentPoly('{format_poly(self.body.coeffs)}')"
        return f"LaurentPoly('q^{self.shift} * ({format_poly(self.body.coeffs)})')"


def _coerce_laurent(other):
    if isinstance(other, LaurentPoly):
        return other
    if isinstance(other, Poly):
        return LaurentPoly(other)
    if isinstance(other, (int, Fraction)):
        return LaurentPoly(Poly([other]))
    return NotImplemented


def neg_q_power(e: int) -> LaurentPoly:
    """(-q)**e for any integer e."""
    return LaurentPoly.monomial(-1 if e % 2 else 1, e)
