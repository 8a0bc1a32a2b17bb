"""Arbitrary-precision evaluation of the infinite series and products.

Every evaluation returns an EvalReport carrying a rigorous truncation bound:
series tails are controlled by a monotone upper bound U(k) on the term ratio
(so the tail after term k is at most |t_k| U/(1-U) once U < 1), and infinite
products by |log(1-x)| <= 2x for x <= 1/2 together with the geometric sum of
the remaining exponents.  Floating round-off is absorbed by the guard bits of
the working precision, which callers fix explicitly per call; nothing reads
ambient precision state.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .qseries import SeriesId
from .wz import CheckResult

GUARD_BITS = 64

#: Hard cap on series terms, protecting the q -> 1 scans from runaway loops.
MAX_TERMS = 10**6


class ConvergenceBudgetExceeded(ArithmeticError):
    """The tail bound was not met within the term budget; raised rather than
    silently returning a degraded value."""


@dataclass
class EvalReport:
    value: mpmath.mpf
    tail_bound: mpmath.mpf
    terms_used: int


@dataclass
class LimitPoint:
    j: int
    q: mpmath.mpf
    value: mpmath.mpf
    distance: mpmath.mpf
    terms_used: int


def working_prec(digits: int) -> int:
    """Binary working precision for a decimal-digit target."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    return math.ceil(digits * math.log2(10)) + GUARD_BITS


def _to_mpf(x) -> mpmath.mpf:
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _check_q(qm) -> None:
    if not (0 < qm < 1):
        raise ValueError("q must lie strictly between 0 and 1")


_SERIES = (SeriesId.J2_LHS, SeriesId.L2_LHS, SeriesId.SUN_LHS)


def eval_series(
    sid: SeriesId,
    q,
    eps,
    prec: int | None = None,
    max_terms: int = MAX_TERMS,
) -> EvalReport:
    """Evaluate one of the three infinite series at real q in (0, 1).

    Stops once the geometric tail bound drops below eps; raises
    ConvergenceBudgetExceeded if max_terms is hit first.
    """
    if sid not in _SERIES:
        raise ValueError(f"{sid} is not an evaluable infinite series")
    if prec is None:
        prec = GUARD_BITS + max(64, int(-mpmath.log(_to_mpf(eps), 2)) + 16)
    with mpmath.workprec(prec):
        qm = _to_mpf(q)
        _check_q(qm)
        epsm = _to_mpf(eps)
        if epsm <= 0:
            raise ValueError("eps must be positive")
        one = mpmath.mpf(1)
        one_minus_q = one - qm
        total = one  # k = 0 term of all three series
        p_odd = one  # (q; q^2)_k
        p_even2 = one  # (q^2; q^4)_k
        p_four = one  # (q^4; q^4)_k
        q_sq = one  # q^(k^2)
        q_3sq = one  # q^(3k^2)
        k = 0
        while True:
            k += 1
            if k > max_terms:
                raise ConvergenceBudgetExceeded(
                    f"{sid.value} at q={mpmath.nstr(qm, 8)}: no tail bound within {max_terms} terms"
                )
            p_odd *= one - qm ** (2 * k - 1)
            p_four *= one - qm ** (4 * k)
            q_sq *= qm ** (2 * k - 1)
            if sid is SeriesId.J2_LHS:
                p_even2 *= one - qm ** (4 * k - 2)
                bracket = (one - qm ** (6 * k + 1)) / one_minus_q
                term = q_sq * bracket * p_odd * p_odd * p_even2 / (p_four**3)
            elif sid is SeriesId.L2_LHS:
                q_3sq *= qm ** (6 * k - 3)
                bracket = (one - qm ** (6 * k + 1)) / one_minus_q
                term = q_3sq * bracket * p_odd**3 / (p_four**3)
                if k % 2:
                    term = -term
            else:
                term = q_sq * p_odd / p_four
            total += term
            ratio_bound = _ratio_bound(sid, qm, k)
            if ratio_bound < 1:
                tail = abs(term) * ratio_bound / (1 - ratio_bound)
                if tail <= epsm:
                    return EvalReport(total, tail, k + 1)


def _ratio_bound(sid: SeriesId, qm, k: int):
    """Monotone upper bound on |t_{j+1}/t_j| valid for every j >= k."""
    if sid is SeriesId.J2_LHS:
        return qm ** (2 * k + 1) / ((1 - qm ** (6 * k + 1)) * (1 - qm ** (4 * k + 4)) ** 3)
    if sid is SeriesId.L2_LHS:
        return qm ** (6 * k + 3) / ((1 - qm ** (6 * k + 1)) * (1 - qm ** (4 * k + 4)) ** 3)
    return qm ** (2 * k + 1) / (1 - qm ** (4 * k + 4))


def series_partial_value(sid: SeriesId, q, upper: int, prec: int) -> mpmath.mpf:
    """Numeric sum of the series terms for k = 0..upper (no tail estimate);
    used to cross-validate against the exact partial sums."""
    if sid not in _SERIES:
        raise ValueError(f"{sid} is not an evaluable infinite series")
    with mpmath.workprec(prec):
        qm = _to_mpf(q)
        _check_q(qm)
        one = mpmath.mpf(1)
        total = one
        p_odd = p_even2 = p_four = q_sq = q_3sq = one
        for k in range(1, upper + 1):
            p_odd *= one - qm ** (2 * k - 1)
            p_four *= one - qm ** (4 * k)
            q_sq *= qm ** (2 * k - 1)
            if sid is SeriesId.J2_LHS:
                p_even2 *= one - qm ** (4 * k - 2)
                term = q_sq * (one - qm ** (6 * k + 1)) / (one - qm) * p_odd**2 * p_even2 / p_four**3
            elif sid is SeriesId.L2_LHS:
                q_3sq *= qm ** (6 * k - 3)
                term = q_3sq * (one - qm ** (6 * k + 1)) / (one - qm) * p_odd**3 / p_four**3
                if k % 2:
                    term = -term
            else:
                term = q_sq * p_odd / p_four
            total += term
        return total


def _qpoch_inf(
    first_exp, step: int, qm, epsm, relative: bool = False, max_terms: int = MAX_TERMS
) -> EvalReport:
    """prod_{m>=0} (1 - q^(first_exp + m*step)) with a rigorous tail factor.

    first_exp may be any positive real; step is a positive integer.  With
    relative=True the stop criterion is on the tail's log (i.e. the relative
    error), which is what ratios of vanishingly small products need near
    q -> 1; the reported tail_bound is absolute either way.
    """
    one = mpmath.mpf(1)
    q_step = qm**step
    x = qm**first_exp
    prod = one
    m = 0
    while True:
        m += 1
        if m > max_terms:
            raise ConvergenceBudgetExceeded("infinite product tail bound not met")
        prod *= one - x
        x *= q_step
        # Remaining factors (1 - x q_step^i); for x <= 1/2 their log is
        # bounded by 2 * x / (1 - q_step) in absolute value.
        if x <= mpmath.mpf("0.5"):
            log_tail = 2 * x / (1 - q_step)
            bound = abs(prod) * (1 - mpmath.exp(-log_tail))
            if (log_tail if relative else bound) <= epsm:
                return EvalReport(prod, bound, m)


def eval_qpoch_inf(base_exp: int, step: int, q, eps, prec: int | None = None) -> EvalReport:
    """(q^base_exp; q^step)_infinity for integer base_exp >= 1, step >= 1."""
    if base_exp < 1 or step < 1:
        raise ValueError("base_exp and step must be >= 1")
    if prec is None:
        prec = GUARD_BITS + max(64, int(-mpmath.log(_to_mpf(eps), 2)) + 16)
    with mpmath.workprec(prec):
        qm = _to_mpf(q)
        _check_q(qm)
        epsm = _to_mpf(eps)
        if epsm <= 0:
            raise ValueError("eps must be positive")
        return _qpoch_inf(base_exp, step, qm, epsm)


# ---------------------------------------------------------------------------
# Interval-style combination of reports.
# ---------------------------------------------------------------------------


def _rep_mul(a: EvalReport, b: EvalReport) -> EvalReport:
    value = a.value * b.value
    bound = abs(a.value) * b.tail_bound + abs(b.value) * a.tail_bound + a.tail_bound * b.tail_bound
    return EvalReport(value, bound, a.terms_used + b.terms_used)


def _rep_div(a: EvalReport, b: EvalReport) -> EvalReport:
    low = abs(b.value) - b.tail_bound
    if low <= 0:
        raise ArithmeticError("division by an interval containing zero")
    value = a.value / b.value
    bound = (a.tail_bound + abs(value) * b.tail_bound) / low
    return EvalReport(value, bound, a.terms_used + b.terms_used)


def _rep_scale(a: EvalReport, c) -> EvalReport:
    return EvalReport(a.value * c, a.tail_bound * abs(c), a.terms_used)


NUMERIC_IDENTITIES = ("A1", "A11", "SLATER", "PRODFACT")


def check_identity_numeric(which: str, q, digits: int) -> CheckResult:
    """Evaluate both sides of an infinite identity and compare.

    Passes iff |LHS - RHS| <= 10^-digits plus both tail bounds.
    """
    which = which.upper()
    if which not in NUMERIC_IDENTITIES:
        raise ValueError(f"unknown numeric identity {which!r}")
    prec = working_prec(digits)
    with mpmath.workprec(prec):
        qm = _to_mpf(q)
        _check_q(qm)
        eps_side = mpmath.mpf(10) ** (-digits - 5)
        eps_part = eps_side / 8
        qp = lambda b, s: _qpoch_inf(b, s, qm, eps_part)  # noqa: E731
        if which == "A1":
            lhs = eval_series(SeriesId.J2_LHS, qm, eps_side, prec=prec)
            rhs = _rep_div(_rep_div(_rep_mul(qp(2, 4), qp(6, 4)), qp(4, 4)), qp(4, 4))
            rhs = _rep_scale(rhs, 1 + qm)
        elif which == "A11":
            lhs = eval_series(SeriesId.L2_LHS, qm, eps_side, prec=prec)
            rhs = _rep_div(_rep_div(_rep_mul(qp(3, 4), qp(5, 4)), qp(4, 4)), qp(4, 4))
        elif which == "SLATER":
            lhs = eval_series(SeriesId.SUN_LHS, qm, eps_side, prec=prec)
            rhs = _rep_div(_rep_mul(qp(2, 4), qp(2, 4)), qp(1, 2))
        else:  # PRODFACT
            lhs = _rep_scale(qp(1, 2), 1 / (1 - qm))
            rhs = _rep_mul(qp(3, 4), qp(5, 4))
        diff = abs(lhs.value - rhs.value)
        allowed = mpmath.mpf(10) ** (-digits) + lhs.tail_bound + rhs.tail_bound
        label = f"{which.lower()} q={mpmath.nstr(qm, 12)} digits={digits}"
        return CheckResult(
            diff <= allowed,
            label,
            bound=diff,
            terms=lhs.terms_used + rhs.terms_used,
        )


CLASSICAL_SERIES = ("PI1", "PI2")


def eval_classical(which: str, digits: int) -> EvalReport:
    """The two classical central-binomial series, summed in exact rational
    arithmetic by the term recurrence and rounded once at the end."""
    which = which.upper()
    if which not in CLASSICAL_SERIES:
        raise ValueError(f"unknown classical series {which!r}")
    eps = Fraction(1, 10 ** (digits + 5))
    denom_base = 4 if which == "PI1" else 8
    term = Fraction(1)
    total = Fraction(1)
    k = 0
    while True:
        # sup over j >= k of |t_{j+1}/t_j| (the cubed fraction is < 1 and the
        # leading ratio decreases in k).
        ratio_cap = Fraction(6 * k + 7, denom_base * (6 * k + 1))
        if ratio_cap < 1:
            tail = abs(term) * ratio_cap / (1 - ratio_cap)
            if tail <= eps:
                break
        step = Fraction(
            (6 * k + 7) * (2 * k + 1) ** 3,
            (6 * k + 1) * (2 * k + 2) ** 3 * denom_base,
        )
        if which == "PI2":
            step = -step
        term *= step
        k += 1
        total += term
    prec = working_prec(digits)
    with mpmath.workprec(prec):
        value = mpmath.mpf(total.numerator) / total.denominator
        tail_val = mpmath.mpf(tail.numerator) / tail.denominator
    return EvalReport(value, tail_val, k + 1)


def classical_target(which: str, prec: int) -> mpmath.mpf:
    """4/pi or 2*sqrt(2)/pi from the constant routines, independently of the
    series under test."""
    which = which.upper()
    with mpmath.workprec(prec):
        if which == "PI1":
            return 4 / mpmath.pi
        if which == "PI2":
            return 2 * mpmath.sqrt(2) / mpmath.pi
    raise ValueError(f"unknown classical series {which!r}")


def q_gamma(x, q, digits: int) -> EvalReport:
    """Gamma_q(x) = (q;q)_inf / (q^x;q)_inf * (1-q)^(1-x) for 0 < q < 1, x > 0."""
    prec = working_prec(digits)
    with mpmath.workprec(prec):
        qm = _to_mpf(q)
        _check_q(qm)
        xm = _to_mpf(x)
        if xm <= 0:
            raise ValueError("x must be positive")
        epsm = mpmath.mpf(10) ** (-digits - 5)
        num = _qpoch_inf(1, 1, qm, epsm / 4, relative=True)
        den = _qpoch_inf(xm, 1, qm, epsm / 4, relative=True)
        rep = _rep_div(num, den)
        return _rep_scale(rep, (1 - qm) ** (1 - xm))


LIMIT_TARGETS = ("PI1", "PI2")


def limit_scan(which: str, j_range, digits: int = 12) -> list[LimitPoint]:
    """Evaluate the q-series at q_j = 1 - 2^-j and report the distance to the
    classical value; distances are reported, not asserted monotone."""
    which = which.upper()
    if which not in LIMIT_TARGETS:
        raise ValueError(f"unknown limit target {which!r}")
    sid = SeriesId.J2_LHS if which == "PI1" else SeriesId.L2_LHS
    js = list(j_range)
    if any(j < 2 or j > 16 for j in js):
        raise ValueError("j must lie in 2..16")
    prec = working_prec(digits) + 32
    points = []
    for j in js:
        with mpmath.workprec(prec):
            qj = 1 - mpmath.mpf(2) ** (-j)
            rep = eval_series(sid, qj, mpmath.mpf(10) ** (-digits), prec=prec)
            target = classical_target(which, prec)
            dist = abs(rep.value - target)
        points.append(LimitPoint(j, qj, rep.value, dist, rep.terms_used))
    return points
