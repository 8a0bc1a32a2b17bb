"""Factored q-products and the exact summation kernels built on them.

Every summand handled by this package is a product of a rational coefficient,
a power of q, and "brackets" (1 - q**m) with integer exponents; q-integers and
q-shifted factorials with integer exponents all decompose this way, with
(1 - q**-m) = -q**-m (1 - q**m) normalizing negative exponents.  Since each
bracket splits into distinct irreducible cyclotomic factors, products can be
reduced exactly without any polynomial gcd, and sums of many such terms can be
accumulated over a structured common denominator using only O(degree) per
bracket operations on plain integer coefficient lists.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .polys import Poly, cyclotomic, divisors, mobius
from .ratfunc import RatFunc


class InexactDivision(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# Integer coefficient-list kernels.  A polynomial is a list of ints, index i
# holding the coefficient of q^i; trailing zeros are allowed and trimmed
# lazily.  The zero polynomial is any all-zero list (canonically []).
# ---------------------------------------------------------------------------


def list_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def list_is_zero(c: Sequence[int]) -> bool:
    return not any(c)


def list_bracket_mul(c: Sequence[int], m: int) -> list[int]:
    """c * (1 - q**m)."""
    if not c:
        return []
    out = list(c) + [0] * m
    for i, v in enumerate(c):
        if v:
            out[i + m] -= v
    return out


def list_bracket_div(c: Sequence[int], m: int) -> list[int]:
    """Exact division by (1 - q**m); raises InexactDivision otherwise."""
    c = list(c)
    list_trim(c)
    if not c:
        return []
    if len(c) <= m:
        raise InexactDivision(f"not divisible by 1 - q^{m}")
    out = [0] * (len(c) - m)
    for i in range(len(out)):
        out[i] = c[i] + (out[i - m] if i >= m else 0)
    for i in range(len(out), len(c)):
        carry = out[i - m] if i >= m else 0
        if c[i] + carry != 0:
            raise InexactDivision(f"not divisible by 1 - q^{m}")
    return out


def list_scale(c: Sequence[int], k: int) -> list[int]:
    if k == 1:
        return list(c)
    return [v * k for v in c]


def list_scale_div_exact(c: Sequence[int], k: int) -> list[int]:
    if k == 1:
        return list(c)
    out = []
    for v in c:
        d, r = divmod(v, k)
        if r:
            raise InexactDivision(f"coefficient {v} not divisible by {k}")
        out.append(d)
    return out


def list_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if list_is_zero(a) or list_is_zero(b):
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def list_add(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return out


def list_divmod_monic(c: Sequence[int], d: Sequence[int]) -> tuple[list[int], list[int]]:
    """Quotient and remainder by a monic integer polynomial."""
    assert d and d[-1] == 1, "divisor must be monic"
    rem = list(c)
    dn = len(d)
    if len(rem) < dn:
        return [], rem
    quot = [0] * (len(rem) - dn + 1)
    for i in range(len(quot) - 1, -1, -1):
        f = rem[i + dn - 1]
        if f:
            quot[i] = f
            for j in range(dn - 1):
                rem[i + j] -= f * d[j]
            rem[i + dn - 1] = 0
    return quot, list_trim(rem[: dn - 1])


def list_mod_monic(c: Sequence[int], d: Sequence[int]) -> list[int]:
    dn = len(d)
    if len(c) < dn:
        return list(c)
    rem = list(c)
    for i in range(len(rem) - dn, -1, -1):
        f = rem[i + dn - 1]
        if f:
            for j in range(dn - 1):
                rem[i + j] -= f * d[j]
            rem[i + dn - 1] = 0
    del rem[dn - 1 :]
    return rem


def list_div_exact_monic(c: Sequence[int], d: Sequence[int]) -> list[int] | None:
    """Quotient by a monic integer polynomial if the division is exact."""
    quot, rem = list_divmod_monic(c, d)
    if rem:
        return None
    return quot


_cyclo_int_cache: dict[int, list[int]] = {}


def cyclotomic_int(n: int) -> list[int]:
    cached = _cyclo_int_cache.get(n)
    if cached is None:
        cached = [int(c) for c in cyclotomic(n).coeffs]
        _cyclo_int_cache[n] = cached
    return cached


def expand_bracket_powers(exps: Mapping[int, int]) -> list[int]:
    """Expand prod_m (1 - q**m)**exps[m]; the result must be a polynomial."""
    out = [1]
    for m, e in sorted(exps.items()):
        for _ in range(e):
            out = list_bracket_mul(out, m)
    for m, e in sorted(exps.items()):
        for _ in range(-e):
            out = list_bracket_div(out, m)
    return out


def expand_cyclo_powers(mults: Mapping[int, int]) -> list[int]:
    """Expand prod_d Phi_d(q)**mults[d] (all multiplicities >= 0); monic."""
    brackets: dict[int, int] = {}
    sign = 1
    for d, e in mults.items():
        if e < 0:
            raise ValueError("cyclotomic multiplicities must be >= 0")
        if e == 0:
            continue
        if d == 1 and e % 2:
            sign = -sign
        for t in divisors(d):
            mu = mobius(d // t)
            if mu:
                brackets[t] = brackets.get(t, 0) + mu * e
    out = list_scale(expand_bracket_powers(brackets), sign)
    assert out and out[-1] == 1, "cyclotomic product must be monic"
    return out


def divide_out_cyclotomic(c: list[int], d: int, cap: int) -> tuple[int, list[int]]:
    """Divide c by Phi_d up to cap times; returns (count, reduced c)."""
    phi = cyclotomic_int(d)
    count = 0
    while count < cap:
        quot = list_div_exact_monic(c, phi)
        if quot is None:
            break
        c = quot
        count += 1
    return count, c


# ---------------------------------------------------------------------------
# Factored products.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BracketProduct:
    """coeff * q**shift * prod_m (1 - q**m)**e_m with m >= 1 and e_m != 0.

    Zero is represented by coeff == 0 (shift 0, no brackets).
    """

    coeff: Fraction
    shift: int
    exps: tuple[tuple[int, int], ...]

    @staticmethod
    def make(coeff: Fraction | int, shift: int = 0, exps: Mapping[int, int] | None = None) -> BracketProduct:
        coeff = Fraction(coeff)
        if coeff == 0:
            return _ZERO_BP
        items = tuple(sorted((m, e) for m, e in (exps or {}).items() if e != 0))
        for m, _ in items:
            if m < 1:
                raise ValueError("bracket indices must be >= 1")
        return BracketProduct(coeff, shift, items)

    @staticmethod
    def one() -> BracketProduct:
        return _ONE_BP

    @staticmethod
    def zero() -> BracketProduct:
        return _ZERO_BP

    @staticmethod
    def from_exponent(e: int, power: int = 1) -> BracketProduct:
        """(1 - q**e)**power for any integer e, normalized to positive brackets."""
        if power == 0:
            return _ONE_BP
        if e == 0:
            return _ZERO_BP
        if e > 0:
            return BracketProduct.make(1, 0, {e: power})
        # 1 - q**e = -q**e (1 - q**-e)
        return BracketProduct.make((-1) ** (power % 2), e * power, {-e: power})

    @staticmethod
    def pochhammer(base_exp: int, step: int, count: int) -> BracketProduct:
        """prod_{j=0}^{count-1} (1 - q**(base_exp + j*step)) in factored form."""
        if count < 0:
            raise ValueError("pochhammer count must be >= 0")
        if step < 1:
            raise ValueError("pochhammer step must be >= 1")
        coeff = 1
        shift = 0
        exps: dict[int, int] = {}
        for j in range(count):
            e = base_exp + j * step
            if e == 0:
                return _ZERO_BP
            if e < 0:
                coeff = -coeff
                shift += e
                e = -e
            exps[e] = exps.get(e, 0) + 1
        return BracketProduct.make(coeff, shift, exps)

    @staticmethod
    def q_integer(m: int) -> BracketProduct:
        """[m] = (1 - q**m)/(1 - q), extended to any integer m; [0] = 0."""
        if m == 0:
            return _ZERO_BP
        return BracketProduct.from_exponent(m) / BracketProduct.from_exponent(1)

    def is_zero(self) -> bool:
        return self.coeff == 0

    def exps_map(self) -> dict[int, int]:
        return dict(self.exps)

    def __mul__(self, other: BracketProduct) -> BracketProduct:
        if self.is_zero() or other.is_zero():
            return _ZERO_BP
        exps = self.exps_map()
        for m, e in other.exps:
            exps[m] = exps.get(m, 0) + e
        return BracketProduct.make(self.coeff * other.coeff, self.shift + other.shift, exps)

    def __truediv__(self, other: BracketProduct) -> BracketProduct:
        if other.is_zero():
            raise ZeroDivisionError("division by zero factored product")
        if self.is_zero():
            return _ZERO_BP
        exps = self.exps_map()
        for m, e in other.exps:
            exps[m] = exps.get(m, 0) - e
        return BracketProduct.make(self.coeff / other.coeff, self.shift - other.shift, exps)

    def __pow__(self, n: int) -> BracketProduct:
        if n < 0:
            raise ValueError("negative power; divide explicitly instead")
        if self.is_zero():
            return _ZERO_BP if n else _ONE_BP
        return BracketProduct.make(
            self.coeff**n, self.shift * n, {m: e * n for m, e in self.exps}
        )

    def __neg__(self) -> BracketProduct:
        return BracketProduct.make(-self.coeff, self.shift, dict(self.exps))

    def times_q_power(self, e: int) -> BracketProduct:
        if self.is_zero():
            return _ZERO_BP
        return BracketProduct(self.coeff, self.shift + e, self.exps)

    def times_coeff(self, c: Fraction | int) -> BracketProduct:
        return BracketProduct.make(self.coeff * c, self.shift, dict(self.exps))

    def substitute_q_inverse(self) -> BracketProduct:
        """The factored form of the value at q -> 1/q."""
        if self.is_zero():
            return _ZERO_BP
        coeff = self.coeff
        shift = -self.shift
        exps: dict[int, int] = {}
        for m, e in self.exps:
            # (1 - q**-m)**e = (-1)**e q**(-m e) (1 - q**m)**e
            if e % 2:
                coeff = -coeff
            shift -= m * e
            exps[m] = exps.get(m, 0) + e
        return BracketProduct.make(coeff, shift, exps)

    def cyclo_mults(self) -> dict[int, int]:
        """Multiplicity of each irreducible cyclotomic factor."""
        mults: dict[int, int] = {}
        for m, e in self.exps:
            for d in divisors(m):
                mults[d] = mults.get(d, 0) + e
        return {d: e for d, e in mults.items() if e}

    def evaluate(self, x: Fraction) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        acc = self.coeff * Fraction(x) ** self.shift
        for m, e in self.exps:
            acc *= (1 - Fraction(x) ** m) ** e
        return acc

    def to_ratfunc(self) -> RatFunc:
        """Fully reduced fraction; cancellation happens at the cyclotomic level."""
        if self.is_zero():
            return RatFunc.zero()
        mults = self.cyclo_mults()
        num_mults = {d: e for d, e in mults.items() if e > 0}
        den_mults = {d: -e for d, e in mults.items() if e < 0}
        # (1 - q^m) = -(q^m - 1) flips the sign once per bracket when the
        # product is rewritten in terms of the monic cyclotomics.
        sign = (-1) ** (sum(e for _, e in self.exps) % 2)
        num = Poly(expand_cyclo_powers(num_mults)) * (self.coeff * sign)
        den = Poly(expand_cyclo_powers(den_mults))
        if self.shift >= 0:
            num = num.shifted(self.shift)
        else:
            den = den.shifted(-self.shift)
        return RatFunc._from_reduced(num, den)

    def __repr__(self) -> str:
        factors = " ".join(f"(1-q^{m})^{e}" for m, e in self.exps)
        return f"BracketProduct({self.coeff} * q^{self.shift} * {factors or '1'})"


_ZERO_BP = BracketProduct(Fraction(0), 0, ())
_ONE_BP = BracketProduct(Fraction(1), 0, ())


# ---------------------------------------------------------------------------
# Exact summation over a structured common denominator.
#
# Given terms t_0 .. t_K, extract the componentwise minimum of shifts and
# bracket exponents (the common part C, whose negative exponents are exactly
# the least common denominator); each cofactor t_i / C is then a genuine
# Laurent-free polynomial, expanded incrementally from its predecessor since
# consecutive summands differ only in a handful of factors.
# ---------------------------------------------------------------------------


@dataclass
class FactoredSum:
    """Value = prefactor * (num as a polynomial in q)."""

    prefactor: BracketProduct
    num: list[int]

    def is_zero(self) -> bool:
        return list_is_zero(self.num)

    def cyclo_multiplicity(self, d: int, need: int) -> int:
        """Multiplicity of Phi_d in the value, saturated at `need`.

        Returns the exact (possibly negative) multiplicity when it is below
        `need`, and `need` otherwise.
        """
        pref = sum(e for m, e in self.prefactor.exps if m % d == 0)
        if self.is_zero():
            return need
        cap = max(0, need - pref)
        count, _ = divide_out_cyclotomic(list(self.num), d, cap)
        if count >= cap:
            return need
        return pref + count

    def to_ratfunc(self) -> RatFunc:
        if self.is_zero():
            return RatFunc.zero()
        num = list(self.num)
        low = 0
        while num[low] == 0:
            low += 1
        num = num[low:]
        list_trim(num)
        shift = self.prefactor.shift + low
        den_brackets = 0
        for m, e in self.prefactor.exps:
            for _ in range(e):
                num = list_bracket_mul(num, m)
            if e < 0:
                den_brackets -= e
        den_mults: dict[int, int] = {}
        for m, e in self.prefactor.exps:
            if e < 0:
                for d in divisors(m):
                    den_mults[d] = den_mults.get(d, 0) - e
        for d in sorted(den_mults, key=lambda d: -d):
            if den_mults[d]:
                count, num = divide_out_cyclotomic(num, d, den_mults[d])
                den_mults[d] -= count
        # The denominator brackets flip sign once each when replaced by the
        # monic cyclotomic product.
        sign = (-1) ** (den_brackets % 2)
        num_poly = Poly(num) * (self.prefactor.coeff * sign)
        den_poly = Poly(expand_cyclo_powers(den_mults))
        if shift >= 0:
            num_poly = num_poly.shifted(shift)
        else:
            den_poly = den_poly.shifted(-shift)
        return RatFunc._from_reduced(num_poly, den_poly)


def _as_int_coeffs(terms: Sequence[BracketProduct]) -> tuple[Fraction, list[int]]:
    """Factor the coefficients as content * integers with gcd 1."""
    lcm = 1
    for t in terms:
        lcm = math.lcm(lcm, t.coeff.denominator)
    ints = [int(t.coeff * lcm) for t in terms]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return Fraction(g, lcm), [v // g for v in ints]


def _expand_cofactor(exps: Mapping[int, int], scale: int, offset: int) -> list[int]:
    out = expand_bracket_powers(exps)
    out = list_scale(out, scale)
    return [0] * offset + out


def sum_terms(terms: Iterable[BracketProduct]) -> FactoredSum:
    """Exact sum of factored terms over their least common denominator."""
    live = [t for t in terms if not t.is_zero()]
    if not live:
        return FactoredSum(BracketProduct.one(), [])

    min_shift = min(t.shift for t in live)
    all_ms = sorted({m for t in live for m, _ in t.exps})
    maps = [t.exps_map() for t in live]
    min_exps = {m: min(em.get(m, 0) for em in maps) for m in all_ms}
    content, int_coeffs = _as_int_coeffs(live)
    prefactor = BracketProduct.make(content, min_shift, min_exps)

    resids = [
        {m: em.get(m, 0) - min_exps[m] for m in all_ms if em.get(m, 0) != min_exps[m]}
        for em in maps
    ]
    offsets = [t.shift - min_shift for t in live]

    term_list = _expand_cofactor(resids[0], int_coeffs[0], offsets[0])
    acc = list(term_list)
    for i in range(1, len(live)):
        try:
            bare = term_list[offsets[i - 1] :] if offsets[i - 1] else list(term_list)
            touched = set(resids[i]) | set(resids[i - 1])
            for m in sorted(touched):
                delta = resids[i].get(m, 0) - resids[i - 1].get(m, 0)
                for _ in range(delta):
                    bare = list_bracket_mul(bare, m)
                for _ in range(-delta):
                    bare = list_bracket_div(bare, m)
            if int_coeffs[i] != int_coeffs[i - 1]:
                r = Fraction(int_coeffs[i], int_coeffs[i - 1])
                bare = list_scale(bare, r.numerator)
                bare = list_scale_div_exact(bare, r.denominator)
            term_list = [0] * offsets[i] + bare
        except InexactDivision:
            # Consecutive summands are expected to divide exactly; rebuild
            # from scratch if a caller hands over an irregular sequence.
            term_list = _expand_cofactor(resids[i], int_coeffs[i], offsets[i])
        acc = list_add(acc, term_list)
    list_trim(acc)
    return FactoredSum(prefactor, acc)


# ---------------------------------------------------------------------------
# The same accumulation carried out modulo a monic integer polynomial M.
# Denominators are never inverted: the sum is maintained as A / D with both
# residues updated multiplicatively, so a congruence  sum == rhs (mod M)
# becomes the polynomial statement  A == rhs * D (mod M)  once gcd(D, M) = 1.
# ---------------------------------------------------------------------------


def _mod_bracket_mul(c: list[int], m: int, mod: list[int]) -> list[int]:
    return list_mod_monic(list_bracket_mul(c, m), mod)


def _mod_shift(c: list[int], delta: int, mod: list[int]) -> list[int]:
    if not c or delta == 0:
        return c
    return list_mod_monic([0] * delta + c, mod)


def sum_terms_mod(
    terms: Iterable[BracketProduct], mod: list[int]
) -> tuple[list[int], list[int], dict[int, int]]:
    """Residues (A, D) with sum(terms) = A / D in Q[q]/(mod), plus the bracket
    multiset of D.

    D is a product of brackets (1 - q**m), a q-power, and an integer, so its
    coprimality with a cyclotomic modulus can be read off the returned
    multiset: Phi_d divides (1 - q**m) exactly when d | m.
    """
    assert mod and mod[-1] == 1 and len(mod) >= 2, "modulus must be monic, degree >= 1"
    live = [t for t in terms if not t.is_zero()]
    if not live:
        return [], [1], {}

    def expand_mod(exps: Mapping[int, int], positive: bool) -> list[int]:
        out = [1]
        for m, e in sorted(exps.items()):
            reps = e if positive else -e
            for _ in range(max(0, reps)):
                out = _mod_bracket_mul(out, m, mod)
        return out

    den_brackets: dict[int, int] = {}

    def note_den_bracket(m: int, count: int) -> None:
        if count:
            den_brackets[m] = den_brackets.get(m, 0) + count

    t0 = live[0]
    term = expand_mod(dict(t0.exps), True)
    term = list_scale(term, t0.coeff.numerator)
    den = expand_mod(dict(t0.exps), False)
    den = list_scale(den, t0.coeff.denominator)
    for m, e in t0.exps:
        note_den_bracket(m, -e if e < 0 else 0)
    if t0.shift >= 0:
        term = _mod_shift(term, t0.shift, mod)
    else:
        den = _mod_shift(den, -t0.shift, mod)
    acc = list(term)
    prev = t0
    for t in live[1:]:
        ratio = t / prev
        den_mul = [1]
        for m, e in ratio.exps:
            for _ in range(e):
                term = _mod_bracket_mul(term, m, mod)
            for _ in range(-e):
                den_mul = _mod_bracket_mul(den_mul, m, mod)
            note_den_bracket(m, -e if e < 0 else 0)
        if ratio.shift >= 0:
            term = _mod_shift(term, ratio.shift, mod)
        else:
            den_mul = _mod_shift(den_mul, -ratio.shift, mod)
        term = list_scale(term, ratio.coeff.numerator)
        den_mul = list_scale(den_mul, ratio.coeff.denominator)
        if den_mul != [1]:
            acc = list_mod_monic(list_mul(acc, den_mul), mod)
            den = list_mod_monic(list_mul(den, den_mul), mod)
            term = list_mod_monic(term, mod)
        acc = list_add(acc, term)
        prev = t
    return list_trim(list_mod_monic(acc, mod)), list_trim(list_mod_monic(den, mod)), den_brackets
