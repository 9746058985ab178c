"""Extended-precision arithmetic substrate.

Provides the value types used everywhere else (ExtendedReal, ExactRational,
Interval), log-gamma/digamma via shifted Stirling expansions, and adaptive
Gauss-Legendre quadrature with order-doubling error estimates.

Everything here is a pure function of its inputs; all types are immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from mpmath import mp, mpf, mpc, workdps
import mpmath

# Exact integer ratios.  fractions.Fraction already guarantees the canonical
# form we need (gcd-reduced, positive denominator, exact add/mul), so it is
# used directly rather than reimplemented.
ExactRational = Fraction

DEFAULT_PRECISION = 50
MIN_PRECISION = 15

# Guard digits used inside every operation so that the 10^(2-P) relative
# error contract holds with room to spare.
_GUARD = 10

Number = Union[int, float, Fraction, "ExtendedReal"]


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class QuadratureError(RuntimeError):
    """Target error unreachable within the configured node budget."""


def _to_mpf(x) -> mpf:
    if isinstance(x, mpf):
        return x  # never re-round an exact mpf at ambient precision
    if isinstance(x, ExtendedReal):
        return x.value
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


@dataclass(frozen=True)
class ExtendedReal:
    """A real number carrying its working precision in decimal digits.

    Arithmetic propagates precision as the minimum of the operands'
    precisions; each operation is carried out with guard digits so the
    relative error stays below 10^(2-P).
    """

    value: mpf
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.precision < MIN_PRECISION:
            raise DomainError(f"precision must be >= {MIN_PRECISION}, got {self.precision}")
        if not isinstance(self.value, mpf):
            with workdps(self.precision + _GUARD):
                object.__setattr__(self, "value", _to_mpf(self.value))

    # -- construction -----------------------------------------------------

    @staticmethod
    def of(x: Number, precision: int = DEFAULT_PRECISION) -> "ExtendedReal":
        if isinstance(x, ExtendedReal):
            return x
        with workdps(precision + _GUARD):
            return ExtendedReal(_to_mpf(x), precision)

    def with_precision(self, precision: int) -> "ExtendedReal":
        return ExtendedReal(self.value, precision)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other: Number) -> "ExtendedReal":
        if isinstance(other, ExtendedReal):
            return other
        return ExtendedReal.of(other, self.precision)

    def _binop(self, other: Number, op) -> "ExtendedReal":
        other = self._coerce(other)
        p = min(self.precision, other.precision)
        with workdps(p + _GUARD):
            return ExtendedReal(op(self.value, other.value), p)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.value == 0:
            raise ZeroDivisionError("division by zero ExtendedReal")
        return self._binop(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._coerce(other).__truediv__(self)

    def __neg__(self):
        return ExtendedReal(-self.value, self.precision)

    def __abs__(self):
        return ExtendedReal(abs(self.value), self.precision)

    def ln(self) -> "ExtendedReal":
        if self.value <= 0:
            raise DomainError("ln of non-positive ExtendedReal")
        with workdps(self.precision + _GUARD):
            return ExtendedReal(mpmath.ln(self.value), self.precision)

    def exp(self) -> "ExtendedReal":
        with workdps(self.precision + _GUARD):
            return ExtendedReal(mpmath.exp(self.value), self.precision)

    def sqrt(self) -> "ExtendedReal":
        if self.value < 0:
            raise DomainError("sqrt of negative ExtendedReal")
        with workdps(self.precision + _GUARD):
            return ExtendedReal(mpmath.sqrt(self.value), self.precision)

    # -- comparisons (by value) -------------------------------------------

    def __lt__(self, other):
        return self.value < _to_mpf(other)

    def __le__(self, other):
        return self.value <= _to_mpf(other)

    def __gt__(self, other):
        return self.value > _to_mpf(other)

    def __ge__(self, other):
        return self.value >= _to_mpf(other)

    def __eq__(self, other):
        if isinstance(other, (ExtendedReal, int, float, Fraction)):
            return self.value == _to_mpf(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    # -- conversion -------------------------------------------------------

    def __float__(self):
        return float(self.value)

    def to_decimal_string(self, digits: int | None = None) -> str:
        return mp.nstr(self.value, digits or self.precision, strip_zeros=False)

    def __str__(self):
        return self.to_decimal_string()


@dataclass(frozen=True)
class Interval:
    """Closed interval [lower, upper] certifying an enclosure."""

    lower: ExtendedReal
    upper: ExtendedReal

    def __post_init__(self):
        if self.lower.value > self.upper.value:
            raise DomainError("interval lower bound exceeds upper bound")

    def width(self) -> ExtendedReal:
        return self.upper - self.lower

    def midpoint(self) -> ExtendedReal:
        return (self.lower + self.upper) / 2

    def contains(self, x: Number) -> bool:
        v = _to_mpf(x)
        return self.lower.value <= v <= self.upper.value


# ---------------------------------------------------------------------------
# Constants


def pi_value(precision: int = DEFAULT_PRECISION) -> ExtendedReal:
    with workdps(precision + _GUARD):
        return ExtendedReal(+mp.pi, precision)


def ln2(precision: int = DEFAULT_PRECISION) -> ExtendedReal:
    with workdps(precision + _GUARD):
        return ExtendedReal(mp.ln(2), precision)


def ln_pi(precision: int = DEFAULT_PRECISION) -> ExtendedReal:
    with workdps(precision + _GUARD):
        return ExtendedReal(mp.ln(mp.pi), precision)


def euler_gamma(precision: int = DEFAULT_PRECISION) -> ExtendedReal:
    """Euler's constant, taken from the underlying library as an
    independent reference value for cross-checks."""
    with workdps(precision + _GUARD):
        return ExtendedReal(+mp.euler, precision)


def target_constant(precision: int = DEFAULT_PRECISION) -> ExtendedReal:
    """gamma - ln(4*pi) + 2, the constant every route here converges to."""
    with workdps(precision + _GUARD):
        return ExtendedReal(mp.euler - mp.ln(4 * mp.pi) + 2, precision)


# ---------------------------------------------------------------------------
# Log-gamma / digamma


def _shift_threshold() -> mpf:
    return 10 + mp.dps / 2


def _lngamma_raw(z):
    """Stirling expansion with upward recurrence shift; works for mpf with
    positive real part and for mpc off the negative real axis."""
    eps = mpf(10) ** (-(mp.dps - 2))
    shift = _shift_threshold()
    acc = mp.zero
    re = z.real if isinstance(z, mpc) else z
    while re < shift:
        acc += mp.log(z)
        z = z + 1
        re += 1
    s = (z - mpf(1) / 2) * mp.log(z) - z + mp.log(2 * mp.pi) / 2
    zz = z * z
    w = 1 / z
    for k in range(1, 4 * mp.dps):
        t = mp.bernoulli(2 * k) / (2 * k * (2 * k - 1)) * w
        s += t
        if abs(t) < eps:
            break
        w = w / zz
    return s - acc


def _digamma_raw(x):
    eps = mpf(10) ** (-(mp.dps - 2))
    shift = _shift_threshold()
    acc = mp.zero
    while x < shift:
        acc += 1 / x
        x = x + 1
    s = mp.log(x) - 1 / (2 * x)
    xx = x * x
    w = 1 / xx
    for k in range(1, 4 * mp.dps):
        t = mp.bernoulli(2 * k) / (2 * k) * w
        s -= t
        if abs(t) < eps:
            break
        w = w / xx
    return s - acc


def _polygamma_raw(r, x):
    """psi^(r)(x) for small r >= 1 at real x > 0, via the differentiated
    Stirling series with upward shift.  Only needed for tail acceleration.

    psi^(r)(x) = (-1)^(r-1) [ (r-1)!/x^r + r!/(2 x^(r+1))
                              + sum_k B_2k (2k+r-1)!/(2k)! x^-(2k+r) ]
    and psi^(r)(x) = psi^(r)(x+1) - (-1)^r r!/x^(r+1).
    """
    eps = mpf(10) ** (-(mp.dps - 2))
    shift = _shift_threshold()
    acc = mp.zero
    fact_r = math.factorial(r)
    while x < shift:
        acc -= ((-1) ** r) * fact_r / x ** (r + 1)
        x = x + 1
    s = math.factorial(r - 1) / x ** r + fact_r / (2 * x ** (r + 1))
    w = 1 / x ** (r + 2)
    for k in range(1, 4 * mp.dps):
        coeff = math.factorial(2 * k + r - 1) // math.factorial(2 * k)
        t = mp.bernoulli(2 * k) * coeff * w
        s += t
        if abs(t) < eps:
            break
        w = w / (x * x)
    return ((-1) ** (r - 1)) * s + acc


def ln_gamma(x: Number, precision: int | None = None) -> ExtendedReal:
    """ln Gamma(x) for x > 0."""
    x = ExtendedReal.of(x, precision or DEFAULT_PRECISION)
    if precision is not None:
        x = x.with_precision(precision)
    if x.value <= 0:
        raise DomainError("ln_gamma requires x > 0")
    with workdps(x.precision + _GUARD):
        return ExtendedReal(_lngamma_raw(+x.value), x.precision)


def digamma(x: Number, precision: int | None = None) -> ExtendedReal:
    """psi(x) = Gamma'(x)/Gamma(x) for x > 0."""
    x = ExtendedReal.of(x, precision or DEFAULT_PRECISION)
    if precision is not None:
        x = x.with_precision(precision)
    if x.value <= 0:
        raise DomainError("digamma requires x > 0")
    with workdps(x.precision + _GUARD):
        return ExtendedReal(_digamma_raw(+x.value), x.precision)


def polygamma(order: int, x: Number, precision: int | None = None) -> ExtendedReal:
    """psi^(order)(x), order in 1..6, x > 0.  Used for series tail
    acceleration; not a general polygamma implementation."""
    if not 1 <= order <= 6:
        raise DomainError("polygamma supports orders 1..6 only")
    x = ExtendedReal.of(x, precision or DEFAULT_PRECISION)
    if x.value <= 0:
        raise DomainError("polygamma requires x > 0")
    with workdps(x.precision + _GUARD):
        return ExtendedReal(_polygamma_raw(order, +x.value), x.precision)


# ---------------------------------------------------------------------------
# Adaptive Gauss-Legendre quadrature

_node_cache: dict = {}


def _gauss_legendre_nodes(order: int):
    """Nodes/weights on [-1, 1] at the current mp.dps, cached."""
    key = (order, mp.dps)
    if key in _node_cache:
        return _node_cache[key]
    nodes = []
    weights = []
    tol = mpf(10) ** (-(mp.dps - 2))
    for i in range(1, order // 2 + 1):
        x = mpf(math.cos(math.pi * (i - 0.25) / (order + 0.5)))
        for _ in range(100):
            p0, p1 = mpf(1), x
            for k in range(2, order + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = order * (x * p1 - p0) / (x * x - 1)
            dx = p1 / dp
            x = x - dx
            if abs(dx) < tol:
                break
        p0, p1 = mpf(1), x
        for k in range(2, order + 1):
            p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
        dp = order * (x * p1 - p0) / (x * x - 1)
        w = 2 / ((1 - x * x) * dp * dp)
        nodes.append(x)
        weights.append(w)
    full_nodes = [-x for x in nodes] + ([mpf(0)] if order % 2 else []) + list(reversed(nodes))
    if order % 2:
        # central weight via sum rule
        wc = 2 - 2 * sum(weights)
        full_weights = list(weights) + [wc] + list(reversed(weights))
    else:
        full_weights = list(weights) + list(reversed(weights))
    _node_cache[key] = (full_nodes, full_weights)
    return _node_cache[key]


def _gl_segment(f, a, b, order, precision):
    nodes, weights = _gauss_legendre_nodes(order)
    half = (b - a) / 2
    mid = (a + b) / 2
    total = mp.zero
    for x, w in zip(nodes, weights):
        q = mid + half * x
        total += w * _to_mpf(f(ExtendedReal(q, precision)))
    return total * half


def quadrature(
    f: Callable[[ExtendedReal], Number],
    a: Number,
    b: Number,
    target_error: Number,
    precision: int = DEFAULT_PRECISION,
    max_evals: int = 200_000,
) -> Interval:
    """Integrate a smooth f over the finite interval [a, b].

    Returns an interval of width <= 2*target_error containing the integral.
    Each segment is integrated at orders 12 and 24; disagreement beyond the
    segment's share of the error budget triggers bisection.  Raises
    QuadratureError if the budget of integrand evaluations runs out.
    """
    a_x = ExtendedReal.of(a, precision)
    b_x = ExtendedReal.of(b, precision)
    if not a_x.value < b_x.value:
        raise DomainError("quadrature requires a < b")
    tgt = _to_mpf(target_error)
    if tgt <= 0:
        raise DomainError("target_error must be positive")
    with workdps(precision + _GUARD):
        total_len = b_x.value - a_x.value
        stack = [(+a_x.value, +b_x.value)]
        total = mp.zero
        err_sum = mp.zero
        evals = 0
        while stack:
            lo, hi = stack.pop()
            if evals + 36 > max_evals:
                raise QuadratureError("quadrature node budget exhausted before reaching target error")
            coarse = _gl_segment(f, lo, hi, 12, precision)
            fine = _gl_segment(f, lo, hi, 24, precision)
            evals += 36
            err = abs(fine - coarse)
            budget = tgt * (hi - lo) / total_len
            if err <= budget:
                total += fine
                err_sum += err
            else:
                mid = (lo + hi) / 2
                stack.append((lo, mid))
                stack.append((mid, hi))
        err_sum = max(err_sum, mpf(10) ** (-(precision - 2)))
        return Interval(
            ExtendedReal(total - err_sum, precision),
            ExtendedReal(total + err_sum, precision),
        )
