from fractions import Fraction

import pytest

from qpiverify.factored import sum_terms
from qpiverify.polys import Poly
from qpiverify.qseries import SeriesId, summand, summand_brackets
from qpiverify.ratfunc import RatFunc
from qpiverify.wz import (
    CheckResult,
    IdentityId,
    WzPairId,
    check_identity,
    check_telescoping,
    identity_terms,
    wz_term,
    wz_term_brackets,
)


def test_wz_term_base_cases():
    assert wz_term(WzPairId.PAIR_J2, "F", 0, 0) == RatFunc.one()
    assert wz_term(WzPairId.PAIR_J2, "G", 1, 1) == RatFunc.one()
    assert wz_term(WzPairId.PAIR_L2, "F", 0, 0) == RatFunc.one()
    assert wz_term(WzPairId.PAIR_L2, "G", 1, 1) == RatFunc.one()


def test_wz_term_zero_convention():
    # Denominator (q^4;q^4)_{-1} forces an exact zero.
    assert wz_term(WzPairId.PAIR_J2, "F", 0, 1).is_zero()
    assert wz_term(WzPairId.PAIR_J2, "G", 0, 1).is_zero()
    assert wz_term(WzPairId.PAIR_L2, "F", 2, 3).is_zero()
    assert wz_term(WzPairId.PAIR_L2, "G", 0, 2).is_zero()


def test_wz_f_at_k0_matches_series_summands():
    for n in range(0, 8):
        assert wz_term(WzPairId.PAIR_J2, "F", n, 0) == summand(SeriesId.J2_LHS, None, n)
    # For the second pair, F(n, 0) is the alternating sum's term without the
    # q^(3k^2) weight; check it against a direct evaluation.
    x = Fraction(4, 3)
    for n in range(0, 8):
        val = wz_term(WzPairId.PAIR_L2, "F", n, 0).evaluate(x)
        weight = summand(SeriesId.L2_LHS, None, n).evaluate(x)
        assert val == weight / x ** (3 * n * n)


def test_g_terms_match_rhs_summands():
    # The right-hand summands of the finite identities are exactly G(n, k).
    for n in range(1, 6):
        for k in range(1, n + 1):
            assert wz_term(WzPairId.PAIR_J2, "G", n, k) == summand(SeriesId.A2_RHS, n, k)
            assert wz_term(WzPairId.PAIR_L2, "G", n, k) == summand(SeriesId.SECOND_RHS, n, k)


def test_telescoping_certificate_small_grid_direct_oracle():
    """The engine verdict must agree with plain RatFunc arithmetic."""
    for pair in WzPairId:
        for n in range(0, 5):
            for k in range(1, n + 3):
                direct = (
                    wz_term(pair, "F", n, k - 1)
                    - wz_term(pair, "F", n, k)
                    - wz_term(pair, "G", n + 1, k)
                    + wz_term(pair, "G", n, k)
                )
                result = check_telescoping(pair, n, k)
                assert result.passed == direct.is_zero()
                assert result.passed, (pair, n, k)


def test_telescoping_hand_case():
    # F(0,0) - F(0,1) = 1 and G(1,1) - G(0,1) = 1.
    r = check_telescoping(WzPairId.PAIR_J2, 0, 1)
    assert r.passed and r.witness is None


def test_telescoping_requires_positive_k():
    with pytest.raises(ValueError):
        check_telescoping(WzPairId.PAIR_J2, 2, 0)


def test_check_identity_against_ratfunc_sums():
    for ident in (IdentityId.ID_A2, IdentityId.ID_A3, IdentityId.ID_SECOND, IdentityId.ID_SECOND2):
        for n in range(1, 5):
            lhs_terms, rhs_terms = identity_terms(ident, n)
            lhs = RatFunc.zero()
            for t in lhs_terms:
                lhs = lhs + t.to_ratfunc()
            rhs = RatFunc.zero()
            for t in rhs_terms:
                rhs = rhs + t.to_ratfunc()
            assert lhs == rhs, (ident, n)
            assert check_identity(ident, n).passed


def test_a2_at_n1_reads_one_equals_one():
    lhs_terms, rhs_terms = identity_terms(IdentityId.ID_A2, 1)
    assert [t.to_ratfunc() for t in lhs_terms] == [RatFunc.one()]
    assert [t.to_ratfunc() for t in rhs_terms] == [RatFunc.one()]


def test_whipple_n3_both_sides_are_minus_q_inverse():
    lhs_terms, rhs_terms = identity_terms(IdentityId.ID_WHIPPLE, 3)
    lhs = RatFunc.zero()
    for t in lhs_terms:
        lhs = lhs + t.to_ratfunc()
    minus_q_inv = RatFunc(Poly([-1]), Poly([0, 1]))
    assert lhs == minus_q_inv
    assert rhs_terms[0].to_ratfunc() == minus_q_inv
    assert check_identity(IdentityId.ID_WHIPPLE, 3).passed


def test_whipple_rejects_even_n():
    with pytest.raises(ValueError):
        check_identity(IdentityId.ID_WHIPPLE, 4)


def test_a2_a3_right_sides_agree():
    """Index reversal k -> n-k is an exact bijection between the right sides."""
    for n in range(1, 16):
        rhs_a2 = [summand_brackets(SeriesId.A2_RHS, n, k) for k in range(1, n + 1)]
        rhs_a3 = [summand_brackets(SeriesId.A3_RHS, n, k) for k in range(n)]
        diff = sum_terms(rhs_a2 + [-t for t in rhs_a3])
        assert diff.is_zero(), n


def test_second_vs_second2_under_q_inversion():
    """The right side of the reversed identity is the q -> 1/q image of the
    original right side: the same sum after substituting and clearing shifts."""
    for n in range(1, 11):
        transformed = [
            summand_brackets(SeriesId.SECOND_RHS, n, k).substitute_q_inverse()
            for k in range(1, n + 1)
        ]
        target = [summand_brackets(SeriesId.SECOND2_RHS, n, k) for k in range(n)]
        diff = sum_terms(transformed + [-t for t in target])
        assert diff.is_zero(), n


def test_certificate_sum_reproduces_the_finite_identity():
    """Summing F(n,0) over n < m equals the row sum of G(m, k)."""
    for m in range(1, 16):
        lhs = [wz_term_brackets(WzPairId.PAIR_J2, "F", n, 0) for n in range(m)]
        rhs = [wz_term_brackets(WzPairId.PAIR_J2, "G", m, k) for k in range(1, m + 1)]
        assert sum_terms(lhs + [-t for t in rhs]).is_zero(), m


def test_check_result_invariant():
    with pytest.raises(AssertionError):
        CheckResult(True, "bad", witness=RatFunc.one())
    CheckResult(True, "ok", witness=RatFunc.zero())
    CheckResult(False, "fine", witness=RatFunc.one())


def test_telescoping_degenerates_consistently_out_of_support():
    # Far outside the support every term is zero, and 0 = 0 passes.
    for pair in WzPairId:
        for which in ("F", "G"):
            assert wz_term_brackets(pair, which, 0, 5).is_zero()
        result = check_telescoping(pair, 0, 5)
        assert result.passed and result.witness is None
