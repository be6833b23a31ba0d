"""Exact arithmetic kernel.

Elements of Q(sqrt c) are stored symbolically as ``p + q*s`` with ``s**2 == c``;
fourth roots and other irrational powers only ever appear in
:class:`RadicalScalar` prefactors. :class:`PowerSeries` is a truncated dense
series over either ``Fraction`` or :class:`QuadExt` coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import mpmath

Rational = Union[int, Fraction]


class FieldMismatchError(ValueError):
    """Raised when combining elements of Q(sqrt c) for different radicands."""


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    x = Fraction(x)
    if x < 0:
        return None
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


class QuadExt:
    """The element ``p + q*s`` of Q(s), s**2 = c.

    For ``c < 0`` the element is complex and ``s`` is embedded as
    ``+i*sqrt(-c)``. When ``c`` is the square of a rational the ring
    Q[s]/(s**2 - c) is not a field; elements are still kept symbolic, but
    equality and hashing go through the embedding ``s -> +sqrt(c)``.
    """

    __slots__ = ("p", "q", "c")

    def __init__(self, p: Rational = 0, q: Rational = 0, c: Rational = 0):
        self.p = Fraction(p)
        self.q = Fraction(q)
        self.c = Fraction(c)

    @classmethod
    def sqrt_of(cls, c: Rational) -> QuadExt:
        return cls(0, 1, c)

    # -- coercion -------------------------------------------------------
    def _coerce(self, other) -> QuadExt:
        if isinstance(other, QuadExt):
            if other.c != self.c:
                raise FieldMismatchError(f"radicands differ: {self.c} vs {other.c}")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.c)
        return NotImplemented

    @property
    def root_c(self) -> Fraction | None:
        """Rational value of s when c is a perfect square, else None."""
        return rational_sqrt(self.c)

    def is_rational(self) -> bool:
        return self.q == 0 or self.root_c is not None

    def to_rational(self) -> Fraction:
        """Image in Q; only defined when q == 0 or c is a rational square."""
        if self.q == 0:
            return self.p
        r = self.root_c
        if r is None:
            raise ValueError(f"{self} is irrational")
        return self.p + self.q * r

    def canonical(self) -> QuadExt:
        """Collapse to ``p + 0*s`` when the value is rational."""
        if self.q != 0 and self.root_c is not None:
            return QuadExt(self.to_rational(), 0, self.c)
        return self

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.p + o.p, self.q + o.q, self.c)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.p, -self.q, self.c)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.p - o.p, self.q - o.q, self.c)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadExt(self.p * other, self.q * other, self.c)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(
            self.p * o.p + self.q * o.q * self.c,
            self.p * o.q + self.q * o.p,
            self.c,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.p * self.p - self.q * self.q * self.c

    def conj(self) -> QuadExt:
        return QuadExt(self.p, -self.q, self.c)

    def inverse(self) -> QuadExt:
        n = self.norm()
        if n != 0:
            return QuadExt(self.p / n, -self.q / n, self.c)
        # zero divisor of the split ring; fall back to the rational image
        if self.root_c is not None and self.to_rational() != 0:
            return QuadExt(1 / self.to_rational(), 0, self.c)
        raise ZeroDivisionError(f"{self} is not invertible")

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return QuadExt(self.p / other, self.q / other, self.c)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadExt(1, 0, self.c)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadExt(other, 0, self.c)
        if not isinstance(other, QuadExt):
            return NotImplemented
        if other.c != self.c:
            return False
        if self.root_c is not None:
            return self.to_rational() == other.to_rational()
        return self.p == other.p and self.q == other.q

    def __hash__(self):
        if self.is_rational():
            return hash(self.to_rational())
        return hash((self.p, self.q, self.c))

    def __bool__(self):
        return self != 0

    def __repr__(self):
        return f"QuadExt({self.p}, {self.q}, c={self.c})"

    def __str__(self):
        if self.q == 0:
            return str(self.p)
        s = f"sqrt({self.c})"
        if self.p == 0:
            return f"{self.q}*{s}"
        sign = "+" if self.q > 0 else "-"
        return f"{self.p} {sign} {abs(self.q)}*{s}"


@dataclass(frozen=True)
class RadicalScalar:
    """Symbolic ``base ** exponent`` with a principal-branch evaluation."""

    base: QuadExt
    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exponent", Fraction(self.exponent))

    def __str__(self):
        if self.exponent == 1:
            return f"({self.base})"
        return f"({self.base})^({self.exponent})"


# ---------------------------------------------------------------------------
# numeric evaluation


def _mpf_rational(x: Fraction):
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


def _eval_quad(x: QuadExt):
    if x.q == 0:
        return _mpf_rational(x.p)
    if x.c >= 0:
        s = mpmath.sqrt(_mpf_rational(x.c))
    else:
        s = mpmath.mpc(0, mpmath.sqrt(_mpf_rational(-x.c)))
    return _mpf_rational(x.p) + _mpf_rational(x.q) * s


def numeric_eval(
    x: QuadExt | RadicalScalar | Rational,
    precision_bits: int = 256,
    *,
    real: bool | None = None,
):
    """Evaluate an exact element as an mpmath number.

    ``real`` defaults to ``c >= 0``; when it is true a real result is
    returned, and a radical with a negative base and fractional exponent is
    an error. Otherwise the principal branch is used.
    """
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    if isinstance(x, (int, Fraction)):
        x = QuadExt(x)
    base = x.base if isinstance(x, RadicalScalar) else x
    if real is None:
        real = base.c >= 0
    with mpmath.workprec(precision_bits + 32):
        if isinstance(x, RadicalScalar):
            b = _eval_quad(x.base)
            e = x.exponent
            if e.denominator == 1:
                v = b ** int(e)
            elif real and (isinstance(b, mpmath.mpc) or b < 0):
                raise ValueError(f"{x} has no real value")
            elif e.denominator == 2 and b == 0:
                v = mpmath.mpf(0) if e > 0 else mpmath.inf
            else:
                v = mpmath.power(b, _mpf_rational(e))
        else:
            v = _eval_quad(x)
    with mpmath.workprec(precision_bits):
        if real:
            if isinstance(v, mpmath.mpc):
                if v.imag != 0:
                    raise ValueError(f"{x} has no real value")
                v = v.real
            return +v
        return +mpmath.mpc(v)


# ---------------------------------------------------------------------------
# truncated power series


class PowerSeries:
    """Truncated series ``sum a_k u**k``, known exactly for ``k < order``.

    Coefficients may be ``Fraction`` or :class:`QuadExt`; mixing radicands
    raises :class:`FieldMismatchError`.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs)
        if len(coeffs) > order:
            coeffs = coeffs[:order]
        zero = coeffs[0] * 0 if coeffs else Fraction(0)
        coeffs += [zero] * (order - len(coeffs))
        self.coeffs: list = coeffs
        self.order: int = order

    @classmethod
    def polynomial(cls, coeffs: Sequence, order: int) -> PowerSeries:
        """Exact polynomial, padded/truncated to ``order`` terms."""
        return cls(list(coeffs)[:order], order)

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __repr__(self):
        terms = " + ".join(f"({a})*u^{k}" for k, a in enumerate(self.coeffs) if a != 0)
        return f"PowerSeries({terms or '0'} + O(u^{self.order}))"

    def truncate(self, order: int) -> PowerSeries:
        return PowerSeries(self.coeffs[:order], min(order, self.order))

    def map(self, f) -> PowerSeries:
        return PowerSeries([f(a) for a in self.coeffs], self.order)

    def __add__(self, other: PowerSeries) -> PowerSeries:
        n = min(self.order, other.order)
        return PowerSeries([self[k] + other[k] for k in range(n)], n)

    def __sub__(self, other: PowerSeries) -> PowerSeries:
        n = min(self.order, other.order)
        return PowerSeries([self[k] - other[k] for k in range(n)], n)

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return ps_mul(self, other)
        return self.map(lambda a: a * other)

    __rmul__ = __mul__


def _nonzero_terms(a: PowerSeries) -> list[tuple[int, object]]:
    return [(j, x) for j, x in enumerate(a.coeffs) if j > 0 and x != 0]


def ps_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Cauchy product truncated to the smaller order."""
    n = min(a.order, b.order)
    out = []
    for k in range(n):
        acc = a[0] * b[k]
        for j in range(1, k + 1):
            acc = acc + a[j] * b[k - j]
        out.append(acc)
    return PowerSeries(out, n)


def ps_inv(a: PowerSeries) -> PowerSeries:
    """Multiplicative inverse; the constant term must be invertible."""
    if a.order == 0:
        return a
    if a[0] == 0:
        raise ZeroDivisionError("constant term is zero")
    inv0 = 1 / a[0]
    terms = _nonzero_terms(a)
    out = [inv0]
    for k in range(1, a.order):
        acc = 0 * inv0
        for j, aj in terms:
            if j > k:
                break
            acc = acc + aj * out[k - j]
        out.append(-acc * inv0)
    return PowerSeries(out, a.order)


def ps_pow(a: PowerSeries, alpha: Rational) -> PowerSeries:
    """``a ** alpha`` for rational alpha, requiring ``a[0] == 1``.

    Uses the coefficient recurrence obtained from ``a * y' = alpha * a' * y``,
    which only walks the nonzero coefficients of ``a``.
    """
    if a.order == 0:
        return a
    if a[0] != 1:
        raise ValueError("constant term must be 1")
    alpha = Fraction(alpha)
    one = a[0] * 0 + 1
    terms = _nonzero_terms(a)
    out = [one]
    for k in range(1, a.order):
        acc = 0 * one
        for j, aj in terms:
            if j > k:
                break
            acc = acc + aj * out[k - j] * ((alpha + 1) * j - k)
        out.append(acc / k)
    return PowerSeries(out, a.order)


def ps_sqrt(a: PowerSeries) -> PowerSeries:
    """Square root with constant term 1; ``a[0]`` must equal 1."""
    return ps_pow(a, Fraction(1, 2))


def ps_pow_neg_half(a: PowerSeries) -> PowerSeries:
    """``a ** (-1/2)``; equals ``ps_inv(ps_sqrt(a))``."""
    return ps_pow(a, Fraction(-1, 2))


def ps_exp(a: PowerSeries) -> PowerSeries:
    """Exponential of a series with zero constant term."""
    if a.order == 0:
        return a
    if a[0] != 0:
        raise ValueError("constant term must be 0")
    one = a[0] * 0 + 1
    terms = _nonzero_terms(a)
    out = [one]
    for m in range(1, a.order):
        acc = 0 * one
        for k, ak in terms:
            if k > m:
                break
            acc = acc + ak * out[m - k] * k
        out.append(acc / m)
    return PowerSeries(out, a.order)
