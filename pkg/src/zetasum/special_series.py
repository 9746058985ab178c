"""Non-digit series routes: Stieltjes constants, the fractional-part
integral, and the digamma midpoint series.

The fractional-part integral is evaluated term by term in closed form
(partial fractions on each unit interval); generic quadrature is kept as an
independent cross-check.

The digamma midpoint series sums t(n) = psi(n) - integral of psi over
[n - 1/2, n + 1/2].  Since Gamma(n + 1/2) = (n - 1/2) Gamma(n - 1/2), the
integral collapses to ln(n - 1/2), and the series telescopes against
Stirling's formula to the closed-form value (1 - ln 2)/2.  Terms are
strictly positive (psi'' < 0), and t(n) = -psi''(n)/24 - psi''''(n)/1920 -
..., so t(n) ~ 1/(24 n^2).
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf, workdps

from .numerics import (
    DEFAULT_PRECISION,
    DomainError,
    ExtendedReal,
    _GUARD,
    _digamma_raw,
    _lngamma_raw,
    _polygamma_raw,
)
from .digit_series import SeriesResult

MAX_STIELTJES_INDEX = 8
_EM_ORDERS = (2, 4, 6, 8)


@dataclass(frozen=True)
class StieltjesRequest:
    """Parameters for a Stieltjes-constant evaluation."""

    m: int
    n_terms: int = 10_000
    correction_order: int = 4

    def __post_init__(self):
        if self.m < 0:
            raise DomainError("Stieltjes index must be >= 0")
        if self.m > MAX_STIELTJES_INDEX:
            raise DomainError(
                f"Stieltjes index {self.m} > {MAX_STIELTJES_INDEX}: cancellation "
                "exceeds the default working precision")
        if self.n_terms < 10:
            raise DomainError("n_terms must be >= 10")
        if self.correction_order not in _EM_ORDERS:
            raise DomainError(f"correction_order must be one of {_EM_ORDERS}")


def _log_power_derivative_coeffs(m: int, order: int):
    """Coefficients of d^j/dt^j [ln^m(t)/t] for j = 0..order.

    The j-th derivative is t^-(j+1) * sum_a c[j][a] * ln^a(t) with integer
    coefficients; c[0] = {m: 1} and differentiation maps
    c[j][a] -> a*c[j][a] at power a-1 and -(j+1)*c[j][a] at power a.
    """
    coeffs = [{m: 1}]
    for j in range(order):
        cur = coeffs[-1]
        nxt: dict = {}
        for a, c in cur.items():
            if a > 0:
                nxt[a - 1] = nxt.get(a - 1, 0) + a * c
            nxt[a] = nxt.get(a, 0) - (j + 1) * c
        coeffs.append(nxt)
    return coeffs


def _eval_log_poly(coeff: dict, ln_t: mpf, t: mpf, j: int) -> mpf:
    total = mp.zero
    for a, c in coeff.items():
        total += c * ln_t ** a
    return total / t ** (j + 1)


def stieltjes(req: StieltjesRequest, precision: int = DEFAULT_PRECISION) -> SeriesResult:
    """Stieltjes constant gamma_m by the direct slowly-convergent series,
    finished with Euler-Maclaurin correction terms at the truncation point.

    The tail bound is the magnitude of the first omitted correction term.
    """
    m, N, order = req.m, req.n_terms, req.correction_order
    with workdps(precision + _GUARD):
        acc = mp.zero
        for n in range(1, N + 1):
            ln_n = mp.ln(n)
            acc += ln_n ** m / n
        ln_N = mp.ln(N)
        acc -= ln_N ** (m + 1) / (m + 1)
        # Euler-Maclaurin: subtract f(N)/2 and B_2k/(2k)! f^(2k-1)(N)
        K = order // 2
        coeffs = _log_power_derivative_coeffs(m, 2 * K + 1)
        f_N = _eval_log_poly(coeffs[0], ln_N, mpf(N), 0)
        acc -= f_N / 2
        for k in range(1, K + 1):
            d = _eval_log_poly(coeffs[2 * k - 1], ln_N, mpf(N), 2 * k - 1)
            acc -= mp.bernoulli(2 * k) / mp.factorial(2 * k) * d
        omitted = _eval_log_poly(coeffs[2 * K + 1], ln_N, mpf(N), 2 * K + 1)
        bound = abs(mp.bernoulli(2 * K + 2) / mp.factorial(2 * K + 2) * omitted)
        bound += mpf(10) ** (-(precision - 2)) * (1 + abs(acc))
        return SeriesResult(
            ExtendedReal(acc, precision),
            N,
            ExtendedReal(bound, precision),
            f"stieltjes[{m}]",
        )


# ---------------------------------------------------------------------------
# Fractional-part integral


def _p01_term_raw(n: int) -> mpf:
    """Closed form of the integral over [n, n+1] of
    (1 - {q}^2) / (2 q^2 (q+1)^2).

    With u = q - n the numerator is P(q) = -q^2 + 2nq + 1 - n^2 and
    P(q)/(q^2 (q+1)^2) = A/q + B/q^2 + C/(q+1) + D/(q+1)^2 with
    A = 2n^2 + 2n - 2, B = 1 - n^2, C = -A, D = -n(n+2).
    """
    A = 2 * n * n + 2 * n - 2
    B = 1 - n * n
    D = -n * (n + 2)
    n_ = mpf(n)
    val = A * (mp.ln(n_ + 1) - mp.ln(n_))
    val += B * (1 / n_ - 1 / (n_ + 1))
    val -= A * (mp.ln(n_ + 2) - mp.ln(n_ + 1))
    val += D * (1 / (n_ + 1) - 1 / (n_ + 2))
    return val / 2


def _p01_guard(n: int, precision: int) -> int:
    # the closed form cancels ~5*log10(n) digits (term ~ n^-4, pieces ~ n)
    return precision + _GUARD + 5 * len(str(n))


def p01_term(n: int, precision: int = DEFAULT_PRECISION) -> ExtendedReal:
    """Integral of the fractional-part integrand over [n, n+1]; positive."""
    if n < 1:
        raise DomainError("p01_term requires n >= 1")
    with workdps(_p01_guard(n, precision)):
        return ExtendedReal(_p01_term_raw(n), precision)


def p01_integrand(q: ExtendedReal) -> ExtendedReal:
    """(1 - {q}^2) / (2 q^2 (q+1)^2), the positive integrand behind
    p01_term; exposed for quadrature cross-checks."""
    with workdps(q.precision + _GUARD):
        v = q.value
        u = v - mp.floor(v)
        return ExtendedReal((1 - u * u) / (2 * v * v * (v + 1) ** 2), q.precision)


def p01_integral(N: int, precision: int = DEFAULT_PRECISION) -> SeriesResult:
    """Sum of the first N unit-interval pieces of the fractional-part
    integral; converges to gamma - ln(4 pi) + 2.

    Tail bound: the integrand is at most 1/(2 q^4), so the omitted part is
    below 1/(6 (N+1)^3).
    """
    if N < 1:
        raise DomainError("p01_integral requires N >= 1")
    with workdps(_p01_guard(N, precision)):
        acc = mp.zero
        for n in range(1, N + 1):
            acc += _p01_term_raw(n)
        bound = mpf(1) / (6 * (N + 1) ** 3)
        return SeriesResult(
            ExtendedReal(acc, precision),
            N,
            ExtendedReal(bound, precision),
            "p01_integral",
            positive_terms=True,
        )


# ---------------------------------------------------------------------------
# Digamma midpoint series


def _p12_guard(n: int, precision: int) -> int:
    # psi(n) and ln(n - 1/2) agree to ~2*log10(n) digits before cancelling
    return precision + _GUARD + 2 * len(str(n))


def p12_term(n: int, precision: int = DEFAULT_PRECISION) -> ExtendedReal:
    """psi(n) minus the integral of psi over [n - 1/2, n + 1/2]; positive."""
    if n < 1:
        raise DomainError("p12_term requires n >= 1")
    with workdps(_p12_guard(n, precision)):
        x = mpf(n)
        t = _digamma_raw(x) - (_lngamma_raw(x + mpf(1) / 2) - _lngamma_raw(x - mpf(1) / 2))
        return ExtendedReal(t, precision)


def p12_series(
    N: int,
    accelerate: bool = True,
    precision: int = DEFAULT_PRECISION,
) -> SeriesResult:
    """Partial sum of the digamma midpoint series (limit (1 - ln 2)/2).

    Raw tail bound 1/(24 N): each term equals -psi''(xi)/24 for some xi in
    (n - 1/2, n + 1/2) and 0 < -psi''(q) < 2/q^2 + 2/q^3 for q >= 1/2, so
    t(n) < 1/(24 (n - 1/2)^2) summing below 1/(24 N) + O(1/N^2), absorbed
    into the stated bound for N >= 1.

    With accelerate=True the omitted tail sum_{n>N} (-psi''(n)/24 -
    psi''''(n)/1920) is added in closed form using
      sum_{n>N} psi''(n)  = -2 psi'(N+1) - N psi''(N+1)
      sum_{n>N} psi''''(n) = -4 psi'''(N+1) - N psi''''(N+1)
    leaving a remainder from the psi^(6) Taylor term and beyond, bounded
    generously by 1/N^4.
    """
    if N < 1:
        raise DomainError("p12_series requires N >= 1")
    with workdps(_p12_guard(N, precision)):
        acc = mp.zero
        half = mpf(1) / 2
        for n in range(1, N + 1):
            x = mpf(n)
            acc += _digamma_raw(x) - (_lngamma_raw(x + half) - _lngamma_raw(x - half))
        if accelerate:
            x1 = mpf(N + 1)
            s2 = -2 * _polygamma_raw(1, x1) - N * _polygamma_raw(2, x1)
            s4 = -4 * _polygamma_raw(3, x1) - N * _polygamma_raw(4, x1)
            acc += -s2 / 24 - s4 / 1920
            bound = mpf(1) / N ** 4
        else:
            bound = mpf(1) / (24 * N)
        bound += mpf(10) ** (-(precision - 2))
        return SeriesResult(
            ExtendedReal(acc, precision),
            N,
            ExtendedReal(bound, precision),
            "p12_series",
            positive_terms=not accelerate,
        )


def p12_closed_form(precision: int = DEFAULT_PRECISION) -> ExtendedReal:
    """(1 - ln 2)/2, the provable limit of the digamma midpoint series."""
    with workdps(precision + _GUARD):
        return ExtendedReal((1 - mp.ln(2)) / 2, precision)
