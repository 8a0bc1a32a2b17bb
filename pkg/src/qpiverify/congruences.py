"""Cyclotomic supercongruences and the classical p-adic congruence.

Rational-function congruences use reduced-form semantics: A/B == 0 (mod M)
means that in lowest terms M divides A and gcd(B, M) = 1.  Truncated sums are
checked along two independent routes:

* a modular fast path that accumulates numerator and denominator residues in
  Q[q]/(M) and never inverts anything (the congruence becomes A == rhs * D
  once gcd(D, M) = 1 is established), and
* an exact path that forms the difference over its structured common
  denominator and reads off the multiplicity of every irreducible factor of M,
  which is what reduced-form semantics amount to.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .factored import (
    BracketProduct,
    expand_bracket_powers,
    list_mod_monic,
    list_mul,
    list_scale,
    list_trim,
    sum_terms,
    sum_terms_mod,
)
from .polys import LaurentPoly, Poly, cyclotomic, divisors, poly_gcd, poly_gcd_ext
from .qseries import SeriesId, q_integer, series_terms
from .ratfunc import RatFunc
from .wz import CheckResult, WzPairId, parity_power, wz_term_brackets


class NonInvertibleDenominator(ArithmeticError):
    """The denominator is not invertible modulo the modulus; callers should
    fall back to the exact rational-function path."""


class GcdNotCoprime(ArithmeticError):
    """The congruence is ill-posed: the reduced denominator shares a factor
    with the modulus.  Reported distinctly from a mathematical failure."""


class ExactPathLimit(RuntimeError):
    """The requested case needs the exact path beyond its configured bound."""


class ModulusKind(Enum):
    PHI_SQUARED = "phi-squared"
    N_PHI = "n-phi"


@dataclass(frozen=True)
class ModulusContext:
    """A modulus polynomial together with its irreducible factorization."""

    n: int
    kind: ModulusKind
    modulus: Poly
    factor_mults: tuple[tuple[int, int], ...]  # (cyclotomic index, multiplicity)


@dataclass(frozen=True)
class ModPoly:
    residue: Poly
    context: ModulusContext


def modulus_build(n: int, kind: ModulusKind) -> ModulusContext:
    """Phi_n(q)**2 or [n]*Phi_n(q) for odd n, with factor bookkeeping."""
    if n < 1 or n % 2 == 0:
        raise ValueError("modulus index must be odd and >= 1")
    if kind is ModulusKind.PHI_SQUARED:
        phi = cyclotomic(n)
        return ModulusContext(n, kind, phi * phi, ((n, 2),))
    if kind is ModulusKind.N_PHI:
        modulus = q_integer(n) * cyclotomic(n)
        mults = {d: 1 for d in divisors(n) if d > 1}
        mults[n] = mults.get(n, 0) + 1
        if _is_prime(n):
            # [n] = Phi_n for prime n, so both modulus kinds coincide there.
            assert modulus == cyclotomic(n) * cyclotomic(n)
        return ModulusContext(n, kind, modulus, tuple(sorted(mults.items())))
    raise ValueError(f"unknown modulus kind {kind}")


_mod_int_cache: dict[tuple[int, ModulusKind], list[int]] = {}


def _mod_ints(ctx: ModulusContext) -> list[int]:
    key = (ctx.n, ctx.kind)
    cached = _mod_int_cache.get(key)
    if cached is None:
        assert all(c.denominator == 1 for c in ctx.modulus.coeffs)
        cached = [int(c) for c in ctx.modulus.coeffs]
        _mod_int_cache[key] = cached
    return cached


def mod_reduce(r: RatFunc, ctx: ModulusContext) -> ModPoly:
    """Residue of a rational function in Q[q]/(modulus).

    Negative q-powers live in the denominator of `r` and are cleared through
    the same inverse computation; q itself is always invertible here since
    the modulus has nonzero constant term.
    """
    g, s, _ = poly_gcd_ext(r.den, ctx.modulus)
    if g.degree > 0:
        raise NonInvertibleDenominator(
            f"denominator shares the factor {g!r} with the modulus"
        )
    # g is the constant 1, so s is the inverse of den modulo the modulus.
    residue = (r.num * s) % ctx.modulus
    return ModPoly(residue, ctx)


def congruent_zero(r: RatFunc, m: Poly, label: str = "congruent-zero") -> CheckResult:
    """Reduced-form congruence r == 0 (mod m): m | num(r) and gcd(den(r), m) = 1."""
    if m.is_zero():
        raise ValueError("zero modulus")
    g = poly_gcd(r.den, m)
    if g.degree > 0:
        raise GcdNotCoprime(f"{label}: denominator shares {g!r} with the modulus")
    if (r.num % m).is_zero():
        return CheckResult(True, label)
    _, s, _ = poly_gcd_ext(r.den, m)
    residue = (r.num * s) % m
    return CheckResult(False, label, witness=RatFunc.from_poly(residue))


def _rhs_poly_parts(rhs: BracketProduct) -> tuple[int, int, list[int]]:
    """Split sign * q**shift * polynomial out of a factored right-hand side."""
    if rhs.coeff.denominator != 1:
        raise ValueError("congruence right-hand sides must have integer coefficients")
    poly = list_scale(expand_bracket_powers(dict(rhs.exps)), abs(int(rhs.coeff)))
    sign = 1 if rhs.coeff > 0 else -1
    return sign, rhs.shift, poly


def _check_congruence_modular(
    terms, rhs: BracketProduct, ctx: ModulusContext, label: str
) -> CheckResult:
    mod = _mod_ints(ctx)
    acc, den, den_brackets = sum_terms_mod(terms, mod)
    # The accumulated denominator is an integer times a q-power times brackets
    # (1 - q^m); Phi_d divides such a bracket exactly when d | m, so
    # coprimality with the modulus is a divisibility scan, not a gcd.
    for d, _ in ctx.factor_mults:
        shared = [m for m in den_brackets if m % d == 0]
        if shared:
            raise NonInvertibleDenominator(
                f"{label}: denominator bracket 1-q^{shared[0]} shares the "
                f"index-{d} cyclotomic with the modulus"
            )
    sign, shift, rhs_poly = _rhs_poly_parts(rhs)
    lhs_side = list(acc)
    rhs_side = list_scale(list_mod_monic(list_mul(rhs_poly, den), mod), sign)
    if shift >= 0:
        rhs_side = list_mod_monic([0] * shift + rhs_side, mod)
    else:
        lhs_side = list_mod_monic([0] * (-shift) + lhs_side, mod)
    if list_trim(lhs_side) == list_trim(rhs_side):
        return CheckResult(True, label)
    # Witness: residue of (sum - rhs); the cleared q-power rejoins the
    # denominator so both verification paths report the same residue.
    diff = Poly([a - b for a, b in _zip_pad(lhs_side, rhs_side)])
    den_poly = Poly(den)
    den_full = den_poly if shift >= 0 else den_poly.shifted(-shift)
    _, s, _ = poly_gcd_ext(den_full, ctx.modulus)
    residue = (diff * s) % ctx.modulus
    return CheckResult(False, label, witness=RatFunc.from_poly(residue))


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


def _check_congruence_exact(
    terms, rhs: BracketProduct, ctx: ModulusContext, label: str
) -> CheckResult:
    fs = sum_terms(list(terms) + [-rhs])
    if fs.is_zero():
        return CheckResult(True, label)
    ill = False
    failed = False
    for d, mult in ctx.factor_mults:
        total = fs.cyclo_multiplicity(d, mult)
        if total >= mult:
            continue
        if total < 0:
            ill = True
        else:
            failed = True
    if ill:
        raise GcdNotCoprime(f"{label}: reduced denominator shares a factor with the modulus")
    if not failed:
        return CheckResult(True, label)
    residue = mod_reduce(fs.to_ratfunc(), ctx).residue
    return CheckResult(False, label, witness=RatFunc.from_poly(residue))


def verify_modsun(n: int, path: str = "auto") -> CheckResult:
    """Check sum_{k=0}^{(n-1)/2} q^(k^2) (q;q^2)_k / (q^4;q^4)_k against
    (-q)^((1-n^2)/8) modulo Phi_n(q)**2 for odd n."""
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be odd and >= 1")
    if path not in ("auto", "modular", "exact"):
        raise ValueError("path must be auto, modular, or exact")
    resolved = "modular" if path in ("auto", "modular") else "exact"
    ctx = modulus_build(n, ModulusKind.PHI_SQUARED)
    terms = series_terms(SeriesId.SUN_LHS, n, (n - 1) // 2)
    assert (1 - n * n) % 8 == 0, "odd n has n^2 = 1 (mod 8)"
    e = (1 - n * n) // 8
    rhs = BracketProduct.make(parity_power(e), e, {})
    label = f"modsun n={n} ({resolved})"
    if resolved == "modular":
        return _check_congruence_modular(terms, rhs, ctx, label)
    return _check_congruence_exact(terms, rhs, ctx, label)


#: Largest composite n handled by the exact rational-function path by default;
#: beyond this the summation grows past desk scale.
DEFAULT_EXACT_LIMIT = 27


def verify_intro(
    pair: WzPairId,
    n: int,
    path: str = "auto",
    exact_limit: int = DEFAULT_EXACT_LIMIT,
    exploratory: bool = False,
) -> CheckResult:
    """Check the truncated sums against [n](-q)^e modulo [n]*Phi_n(q).

    PAIR_J2 is stated for every odd n; PAIR_L2 only for odd prime powers
    (pass exploratory=True to evaluate other odd n anyway).  Prime n runs on
    the modular fast path; composite n needs the exact path, whose size is
    capped by `exact_limit`.
    """
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be odd and >= 1")
    if path not in ("auto", "modular", "exact"):
        raise ValueError("path must be auto, modular, or exact")
    if pair is WzPairId.PAIR_L2 and not exploratory and not is_prime_power(n):
        raise ValueError("the PAIR_L2 congruence is stated for odd prime powers only")
    if pair is WzPairId.PAIR_J2:
        terms = series_terms(SeriesId.J2_LHS, None, n - 1)
        e = (1 - n) // 2
    else:
        terms = [wz_term_brackets(WzPairId.PAIR_L2, "F", k, 0) for k in range(n)]
        assert ((n - 1) * (n + 5)) % 8 == 0, "odd n makes the exponent integral"
        e = -((n - 1) * (n + 5)) // 8
    # For the modular route, split [6k+1] = (1 - q^(6k+1))/(1 - q) so that the
    # accumulated denominator only ever collects genuine denominator brackets
    # (the term-ratio chain would otherwise borrow the previous numerator's
    # 1 - q^(6k-5), whose index can share a factor with n).
    split_terms: list[BracketProduct] = []
    for k, t in enumerate(terms):
        u = t / BracketProduct.from_exponent(6 * k + 1)
        split_terms.append(u)
        split_terms.append(-u.times_q_power(6 * k + 1))
    rhs = BracketProduct.q_integer(n).times_q_power(e).times_coeff(parity_power(e))
    ctx = modulus_build(n, ModulusKind.N_PHI)
    if path == "auto":
        resolved = "modular" if _is_prime(n) else "exact"
    else:
        resolved = path
    if resolved == "modular" and not _is_prime(n):
        # Composite denominators share factors with [n]; the fast path cannot
        # certify coprimality there.
        raise NonInvertibleDenominator(
            f"intro {pair.value} n={n}: modular path requires prime n"
        )
    label = f"intro {pair.value} n={n} ({resolved})"
    if resolved == "modular":
        try:
            return _check_congruence_modular(split_terms, rhs, ctx, label)
        except NonInvertibleDenominator:
            if n <= exact_limit:
                return _check_congruence_exact(terms, rhs, ctx, f"intro {pair.value} n={n} (exact)")
            raise
    if n > exact_limit:
        raise ExactPathLimit(
            f"intro {pair.value} n={n}: exact path capped at n <= {exact_limit}"
        )
    return _check_congruence_exact(terms, rhs, ctx, label)


# ---------------------------------------------------------------------------
# Classical p-adic ingredients.
# ---------------------------------------------------------------------------


def _is_prime(n: int) -> bool:
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


def is_prime(n: int) -> bool:
    return _is_prime(n)


def is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
        p += 1 if p == 2 else 2
    return True  # n itself is prime


_euler_even: list[int] = [1]  # E_0, E_2, E_4, ... by the secant recurrence


def euler_number(m: int) -> int:
    """E_m with E_0 = 1 and sum_j binom(m, 2j) E_2j = 0 for even m >= 2;
    odd-index values are zero."""
    if m < 0:
        raise ValueError("Euler number index must be >= 0")
    if m % 2:
        return 0
    i = m // 2
    while len(_euler_even) <= i:
        mm = 2 * len(_euler_even)
        acc = 0
        for j in range(len(_euler_even)):
            acc += math.comb(mm, 2 * j) * _euler_even[j]
        _euler_even.append(-acc)
    return _euler_even[i]


def legendre_symbol(a: int, p: int) -> int:
    """Euler's criterion a^((p-1)/2) mod p mapped to {-1, 0, +1}."""
    if p == 2 or not _is_prime(p):
        raise ValueError("p must be an odd prime")
    t = pow(a % p, (p - 1) // 2, p)
    if t == p - 1:
        return -1
    assert t in (0, 1)
    return t


@dataclass(frozen=True)
class PadicWitness:
    p: int
    difference: Fraction
    valuation: int


def verify_sun(p: int, min_valuation: int = 3) -> tuple[PadicWitness, CheckResult]:
    """Exact p-adic check of the truncated central-binomial sum against the
    Legendre/Euler-number closed form, requiring valuation >= min_valuation."""
    if p < 5 or not _is_prime(p):
        raise ValueError("p must be a prime >= 5")
    total = Fraction(0)
    c = 1  # binom(2k, k), by the multiplicative recurrence
    for k in range((p - 1) // 2 + 1):
        if k:
            c = c * 2 * (2 * k - 1)
            assert c % k == 0
            c //= k
        total += Fraction(c, 8**k)
    closed = legendre_symbol(2, p) + Fraction(legendre_symbol(-2, p) * p * p, 4) * euler_number(p - 3)
    diff = total - closed
    if diff == 0:
        valuation = min_valuation  # unreachable for a genuine congruence; defensive
    else:
        assert diff.denominator % p != 0, "denominator not coprime to p"
        num = abs(diff.numerator)
        valuation = 0
        while num % p == 0:
            num //= p
            valuation += 1
    witness = PadicWitness(p, diff, valuation)
    label = f"sun p={p} (valuation {valuation}, need >= {min_valuation})"
    return witness, CheckResult(valuation >= min_valuation, label)


def check_square_completion(n: int, j: int) -> bool:
    """Exact Laurent identity
    (1-q^(n-2j+1))(1-q^(n+2j-1)) + (1-q^(2j-1))^2 q^(n-2j+1) = (1-q^n)^2."""
    one = LaurentPoly.one()
    a = n - 2 * j + 1
    b = n + 2 * j - 1
    fa = one - LaurentPoly.monomial(1, a)
    fb = one - LaurentPoly.monomial(1, b)
    fj = one - LaurentPoly.monomial(1, 2 * j - 1)
    lhs = fa * fb + fj * fj * LaurentPoly.monomial(1, a)
    fn = one - LaurentPoly.monomial(1, n)
    return lhs == fn * fn
