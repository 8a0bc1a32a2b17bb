import random
from fractions import Fraction

import pytest

from qpiverify.congruences import (
    GcdNotCoprime,
    ModulusKind,
    NonInvertibleDenominator,
    check_square_completion,
    congruent_zero,
    euler_number,
    is_prime,
    is_prime_power,
    legendre_symbol,
    mod_reduce,
    modulus_build,
    verify_intro,
    verify_modsun,
    verify_sun,
)
from qpiverify.polys import Poly, cyclotomic
from qpiverify.qseries import SeriesId, partial_sum
from qpiverify.ratfunc import RatFunc
from qpiverify.wz import WzPairId


def test_modulus_build_examples():
    ctx = modulus_build(3, ModulusKind.PHI_SQUARED)
    assert ctx.modulus == Poly([1, 2, 3, 2, 1])
    assert ctx.factor_mults == ((3, 2),)
    # [3] Phi_3 coincides with Phi_3^2 for the prime 3.
    assert modulus_build(3, ModulusKind.N_PHI).modulus == Poly([1, 2, 3, 2, 1])
    # [9] Phi_9 = Phi_3 Phi_9^2, degree 14.
    ctx9 = modulus_build(9, ModulusKind.N_PHI)
    assert ctx9.modulus == cyclotomic(3) * cyclotomic(9) ** 2
    assert ctx9.modulus.degree == 14
    assert ctx9.factor_mults == ((3, 1), (9, 2))
    assert modulus_build(1, ModulusKind.N_PHI).modulus == cyclotomic(1)


def test_modulus_build_rejects_even():
    with pytest.raises(ValueError):
        modulus_build(4, ModulusKind.PHI_SQUARED)


def test_mod_reduce_constant():
    ctx = modulus_build(3, ModulusKind.PHI_SQUARED)
    assert mod_reduce(RatFunc.one(), ctx).residue == Poly.one()


def test_mod_reduce_inverse_of_q():
    ctx = modulus_build(3, ModulusKind.PHI_SQUARED)
    r = mod_reduce(RatFunc.q_power(-1), ctx)
    assert r.residue.degree <= 3
    assert (Poly.monomial(1, 1) * r.residue % ctx.modulus) == Poly.one()


def test_mod_reduce_noninvertible():
    ctx = modulus_build(3, ModulusKind.PHI_SQUARED)
    with pytest.raises(NonInvertibleDenominator):
        mod_reduce(RatFunc(Poly([1]), Poly([1, 0, 0, -1])), ctx)  # 1/(1-q^3)


def test_mod_reduce_is_ring_homomorphism():
    rng = random.Random(31)
    ctx = modulus_build(5, ModulusKind.PHI_SQUARED)
    mod = ctx.modulus

    def rand_rf():
        num = Poly([rng.randint(-4, 4) for _ in range(rng.randint(1, 5))])
        den = Poly([1, rng.randint(-2, 2), rng.randint(-2, 2), 1])
        while not (poly_coprime(den, mod)):
            den = Poly([1, rng.randint(-2, 2), rng.randint(-2, 2), 1])
        return RatFunc(num, den)

    def poly_coprime(a, b):
        from qpiverify.polys import poly_gcd

        return a.is_zero() is False and poly_gcd(a, b).degree == 0

    for _ in range(40):
        a, b = rand_rf(), rand_rf()
        ra, rb = mod_reduce(a, ctx), mod_reduce(b, ctx)
        assert mod_reduce(a * b, ctx).residue == (ra.residue * rb.residue) % mod
        assert mod_reduce(a + b, ctx).residue == (ra.residue + rb.residue) % mod


def test_mod_reduce_inverse_contract():
    ctx = modulus_build(5, ModulusKind.PHI_SQUARED)
    d = RatFunc.from_poly(Poly([1, 1]))
    inv = mod_reduce(RatFunc.one() / d, ctx)
    direct = mod_reduce(d, ctx)
    assert (inv.residue * direct.residue % ctx.modulus) == Poly.one()


def test_congruent_zero_cases():
    phi3sq = cyclotomic(3) ** 2
    good = RatFunc(phi3sq, Poly([1, 1]) * Poly([1, 0, 1]))
    assert congruent_zero(good, phi3sq).passed
    bad = congruent_zero(RatFunc.one(), phi3sq)
    assert not bad.passed and bad.witness is not None
    with pytest.raises(GcdNotCoprime):
        congruent_zero(RatFunc(Poly([1]), cyclotomic(3)), cyclotomic(3))


def test_modsun_small_cases_and_witness_shape():
    assert verify_modsun(1).passed
    assert verify_modsun(3).passed
    # Hand-verified n = 3 reduction: q * S + 1 = Phi_3^2 / ((1+q)(1+q^2)).
    s = partial_sum(SeriesId.SUN_LHS, 3, 1)
    lhs = RatFunc.q_power(1) * s + RatFunc.one()
    assert lhs == RatFunc(cyclotomic(3) ** 2, Poly([1, 1]) * Poly([1, 0, 1]))


def test_modsun_paths_agree():
    for n in range(1, 26, 2):
        assert verify_modsun(n, path="modular").passed
        assert verify_modsun(n, path="exact").passed


def test_modsun_rejects_even():
    with pytest.raises(ValueError):
        verify_modsun(4)
    with pytest.raises(ValueError):
        verify_modsun(3, path="bogus")


def test_verify_intro_small():
    assert verify_intro(WzPairId.PAIR_J2, 1).passed
    assert verify_intro(WzPairId.PAIR_J2, 3).passed
    assert verify_intro(WzPairId.PAIR_J2, 9).passed  # composite, exact path
    assert verify_intro(WzPairId.PAIR_L2, 3).passed
    assert verify_intro(WzPairId.PAIR_L2, 9).passed


def test_verify_intro_path_agreement():
    for n in (3, 5, 7, 11, 13):
        m = verify_intro(WzPairId.PAIR_J2, n, path="modular")
        e = verify_intro(WzPairId.PAIR_J2, n, path="exact")
        assert m.passed and e.passed
        assert m.witness is None and e.witness is None


def test_verify_intro_validation():
    with pytest.raises(ValueError):
        verify_intro(WzPairId.PAIR_J2, 4)
    with pytest.raises(ValueError):
        verify_intro(WzPairId.PAIR_L2, 15)  # not a prime power
    # exploratory mode evaluates it anyway and returns a verdict
    result = verify_intro(WzPairId.PAIR_L2, 15, exploratory=True)
    assert result.case_label.startswith("intro L2 n=15")


def test_exact_path_limit():
    from qpiverify.congruences import ExactPathLimit

    with pytest.raises(ExactPathLimit):
        verify_intro(WzPairId.PAIR_J2, 33, exact_limit=27)


def test_euler_numbers():
    assert [euler_number(m) for m in range(0, 11, 2)] == [1, -1, 5, -61, 1385, -50521]
    assert euler_number(3) == 0
    with pytest.raises(ValueError):
        euler_number(-2)


def test_legendre_symbol_examples():
    assert legendre_symbol(1, 7) == 1
    assert legendre_symbol(2, 5) == -1
    assert legendre_symbol(-1, 5) == 1
    assert legendre_symbol(10, 5) == 0
    with pytest.raises(ValueError):
        legendre_symbol(2, 9)


def test_legendre_symbol_against_square_counting():
    for p in (3, 5, 7, 11, 13):
        squares = {(x * x) % p for x in range(1, p)}
        for a in range(1, p):
            expected = 1 if a % p in squares else -1
            assert legendre_symbol(a, p) == expected, (a, p)


def test_verify_sun_p5_witness():
    witness, result = verify_sun(5)
    assert witness.difference == Fraction(-125, 32)
    assert witness.valuation == 3
    assert result.passed
    # Requiring one more power of 5 must fail: the valuation is exactly 3.
    _, strict = verify_sun(5, min_valuation=4)
    assert not strict.passed


def test_verify_sun_small_primes():
    for p in (7, 11, 13):
        witness, result = verify_sun(p)
        assert result.passed, (p, witness)


def test_verify_sun_validation():
    with pytest.raises(ValueError):
        verify_sun(4)
    with pytest.raises(ValueError):
        verify_sun(3)


def test_prime_helpers():
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime_power(27) and is_prime_power(25) and is_prime_power(7)
    assert not is_prime_power(1) and not is_prime_power(15) and not is_prime_power(45)


def test_square_completion_small():
    assert all(check_square_completion(n, j) for n in range(1, 13) for j in range(1, n + 1))


def test_failing_congruence_witnesses_agree_across_paths():
    """A deliberately wrong right side must fail on both routes with the same
    congruence residue as witness."""
    from qpiverify.congruences import (
        ModulusKind,
        _check_congruence_exact,
        _check_congruence_modular,
        modulus_build,
    )
    from qpiverify.factored import BracketProduct
    from qpiverify.qseries import SeriesId, series_terms

    n = 7
    ctx = modulus_build(n, ModulusKind.PHI_SQUARED)
    terms = series_terms(SeriesId.SUN_LHS, n, (n - 1) // 2)
    wrong_rhs = BracketProduct.make(1, 0, {})  # the true right side is (-q)^-6
    modular = _check_congruence_modular(terms, wrong_rhs, ctx, "wrong modular")
    exact = _check_congruence_exact(terms, wrong_rhs, ctx, "wrong exact")
    assert not modular.passed and not exact.passed
    assert modular.witness == exact.witness
    assert modular.witness is not None and not modular.witness.is_zero()


def test_exact_path_ill_posed_raises():
    from qpiverify.congruences import ModulusKind, _check_congruence_exact, modulus_build
    from qpiverify.factored import BracketProduct

    ctx = modulus_build(3, ModulusKind.PHI_SQUARED)
    bad_term = BracketProduct.make(1, 0, {3: -1})  # 1/(1-q^3): pole at the modulus
    with pytest.raises(GcdNotCoprime):
        _check_congruence_exact([bad_term], BracketProduct.one(), ctx, "ill-posed")
