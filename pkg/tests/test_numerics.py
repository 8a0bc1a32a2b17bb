import math
from fractions import Fraction

import mpmath
import pytest

from qpiverify.numerics import (
    ConvergenceBudgetExceeded,
    check_identity_numeric,
    classical_target,
    eval_classical,
    eval_qpoch_inf,
    eval_series,
    limit_scan,
    q_gamma,
    series_partial_value,
    working_prec,
)
from qpiverify.qseries import SeriesId, partial_sum


def test_working_prec_policy():
    assert working_prec(50) == math.ceil(50 * math.log2(10)) + 64
    with pytest.raises(ValueError):
        working_prec(0)


def test_qpoch_leading_behavior_at_tiny_q():
    # (q^2; q^4)_inf = 1 - q^2 + O(q^6): at q = 2^-20 the value is within
    # 2^-39 of 1 - 2^-40.
    rep = eval_qpoch_inf(2, 4, Fraction(1, 2**20), Fraction(1, 2**80), prec=160)
    with mpmath.workprec(160):
        target = 1 - mpmath.mpf(2) ** -40
        assert abs(rep.value - target) <= mpmath.mpf(2) ** -39
    assert rep.tail_bound >= 0


def test_qpoch_deterministic():
    a = eval_qpoch_inf(4, 4, Fraction(1, 2), Fraction(1, 10**40))
    b = eval_qpoch_inf(4, 4, Fraction(1, 2), Fraction(1, 10**40))
    assert a.value == b.value and a.terms_used == b.terms_used
    assert a.value > 0


def test_qpoch_validation():
    with pytest.raises(ValueError):
        eval_qpoch_inf(0, 4, Fraction(1, 2), 1)
    with pytest.raises(ValueError):
        eval_qpoch_inf(2, 4, Fraction(3, 2), 1)
    with pytest.raises(ValueError):
        eval_qpoch_inf(2, 4, Fraction(1, 2), 0)


def test_series_tail_bounds_are_honest():
    """Re-evaluating at eps/10 moves the value by at most both tail bounds."""
    for sid in (SeriesId.J2_LHS, SeriesId.L2_LHS, SeriesId.SUN_LHS):
        for q in (Fraction(1, 3), Fraction(2, 3)):
            a = eval_series(sid, q, Fraction(1, 10**25), prec=160)
            b = eval_series(sid, q, Fraction(1, 10**26), prec=160)
            assert abs(a.value - b.value) <= a.tail_bound + b.tail_bound


def test_series_against_exact_partial_sums():
    """First terms of the numeric series match the exact rational partial sums."""
    prec = 200
    for sid in (SeriesId.J2_LHS, SeriesId.L2_LHS, SeriesId.SUN_LHS):
        exact = partial_sum(sid, None, 10)
        for q in (Fraction(1, 2), Fraction(1, 3)):
            v_exact = exact.evaluate(q)
            with mpmath.workprec(prec):
                expected = mpmath.mpf(v_exact.numerator) / v_exact.denominator
                got = series_partial_value(sid, q, 10, prec)
                assert abs(got - expected) < mpmath.mpf(2) ** (-prec + 40)


def test_series_validation_and_budget():
    with pytest.raises(ValueError):
        eval_series(SeriesId.A2_RHS, Fraction(1, 2), Fraction(1, 10))
    with pytest.raises(ValueError):
        eval_series(SeriesId.J2_LHS, Fraction(3, 2), Fraction(1, 10))
    with pytest.raises(ConvergenceBudgetExceeded):
        eval_series(SeriesId.J2_LHS, Fraction(9, 10), Fraction(1, 10**30), max_terms=3)


def test_identity_numeric_quick():
    for which in ("A1", "A11", "SLATER", "PRODFACT"):
        result = check_identity_numeric(which, Fraction(1, 2), 30)
        assert result.passed, (which, result.bound)
        assert result.bound is not None and result.terms is not None


def test_identity_numeric_regression_guard():
    """Dropping the (1+q) factor from the product side must break the check."""
    from qpiverify.numerics import _qpoch_inf, _rep_div, _rep_mul

    digits = 30
    prec = working_prec(digits)
    with mpmath.workprec(prec):
        qm = mpmath.mpf(1) / 2
        eps = mpmath.mpf(10) ** (-digits - 5)
        lhs = eval_series(SeriesId.J2_LHS, qm, eps, prec=prec)
        prod = _rep_mul(_qpoch_inf(2, 4, qm, eps), _qpoch_inf(6, 4, qm, eps))
        prod = _rep_div(_rep_div(prod, _qpoch_inf(4, 4, qm, eps)), _qpoch_inf(4, 4, qm, eps))
        # correct RHS passes
        assert abs(lhs.value - (1 + qm) * prod.value) <= mpmath.mpf(10) ** (-digits)
        # perturbed RHS fails by a wide margin
        assert abs(lhs.value - prod.value) > mpmath.mpf(10) ** (-digits)


def test_identity_numeric_validation():
    with pytest.raises(ValueError):
        check_identity_numeric("nope", Fraction(1, 2), 10)
    with pytest.raises(ValueError):
        check_identity_numeric("A1", Fraction(5, 4), 10)


def test_classical_series_match_targets():
    for which in ("PI1", "PI2"):
        rep = eval_classical(which, 25)
        prec = working_prec(25)
        with mpmath.workprec(prec):
            assert abs(rep.value - classical_target(which, prec)) < mpmath.mpf(10) ** -25


def test_classical_term_recurrence_matches_factorials():
    """The recurrence-generated terms equal the direct factorial formula."""

    def half_pochhammer(k):
        acc = Fraction(1)
        for j in range(k):
            acc *= Fraction(1, 2) + j
        return acc

    term = Fraction(1)
    for k in range(0, 21):
        direct = (
            Fraction(6 * k + 1)
            * half_pochhammer(k) ** 3
            / (Fraction(math.factorial(k)) ** 3 * Fraction(4) ** k)
        )
        assert term == direct, k
        term *= Fraction((6 * k + 7) * (2 * k + 1) ** 3, (6 * k + 1) * (2 * k + 2) ** 3 * 4)


def test_classical_truncation_at_zero_terms():
    # The k = 0 term alone is 1.
    rep = eval_classical("PI1", 1)
    assert rep.terms_used >= 1
    assert abs(rep.value - classical_target("PI1", 64)) < 0.1


def test_q_gamma_normalization():
    for q in (Fraction(1, 2), Fraction(9, 10)):
        for x in (1, 2):
            rep = q_gamma(x, q, 30)
            assert abs(rep.value - 1) < mpmath.mpf(10) ** -28, (q, x)


def test_q_gamma_validation():
    with pytest.raises(ValueError):
        q_gamma(0, Fraction(1, 2), 10)
    with pytest.raises(ValueError):
        q_gamma(1, Fraction(3, 2), 10)


def test_limit_scan_validation():
    with pytest.raises(ValueError):
        limit_scan("PI1", [1])
    with pytest.raises(ValueError):
        limit_scan("PI1", [17])
    with pytest.raises(ValueError):
        limit_scan("nope", [4])


def test_limit_scan_small():
    points = limit_scan("PI1", range(4, 7))
    assert [p.j for p in points] == [4, 5, 6]
    assert points[0].distance > points[1].distance > points[2].distance


def test_identity_residuals_at_standard_points():
    """Residuals stay below 10^-50 on the four standard sample points."""
    for which in ("A1", "A11", "SLATER", "PRODFACT"):
        for q in (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)):
            result = check_identity_numeric(which, q, 50)
            assert result.passed, (which, q, result.bound)
