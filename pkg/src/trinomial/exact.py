"""Exact values of the generalised central trinomial coefficients.

``T_n(b, c) = [x^n] (x^2 + b x + c)^n``, computed four independent ways:
a direct multinomial sum (the oracle), dense polynomial powering, the
three-term holonomic recurrence, and Taylor coefficients of the generating
function ``1/sqrt(1 - 2 b t + d t^2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import PowerSeries, QuadExt, ps_pow_neg_half

Rational = Union[int, Fraction, str]


class RecurrenceError(ArithmeticError):
    """An exact division in the recurrence left a remainder."""


@dataclass(frozen=True)
class TrinomialParams:
    b: Fraction
    c: Fraction

    def __init__(self, b: Rational, c: Rational):
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "c", Fraction(c))

    @property
    def d(self) -> Fraction:
        return self.b * self.b - 4 * self.c

    def __str__(self):
        return f"(b={self.b}, c={self.c})"


def _lcm_den(*xs: Fraction) -> int:
    return math.lcm(*(x.denominator for x in xs))


def tn_direct_sum(params: TrinomialParams, n: int) -> Fraction:
    """Multinomial expansion: sum_k n!/(k! k! (n-2k)!) b^(n-2k) c^k."""
    b, c = params.b, params.c
    if b.denominator == 1 and c.denominator == 1:
        bi, ci = b.numerator, c.numerator
        return Fraction(
            sum(
                math.comb(n, 2 * k) * math.comb(2 * k, k) * bi ** (n - 2 * k) * ci**k
                for k in range(n // 2 + 1)
            )
        )
    return sum(
        (
            math.comb(n, 2 * k) * math.comb(2 * k, k) * b ** (n - 2 * k) * c**k
            for k in range(n // 2 + 1)
        ),
        Fraction(0),
    )


# -- dense integer polynomials ------------------------------------------


def _poly_mul(a: list[int], b: list[int], keep: int) -> list[int]:
    """Product of integer coefficient arrays, truncated to ``keep`` terms.

    The arrays are packed into single integers (Kronecker substitution) so the
    convolution runs inside CPython's big-integer multiply; coefficients are
    offset into a balanced digit range so negative entries survive unpacking.
    """
    a, b = a[:keep], b[:keep]
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    nbytes = (bound.bit_length() + 2 + 7) // 8
    width = 8 * nbytes
    half = 1 << (width - 1)

    def repunit(m):
        return int.from_bytes((b"\x01" + b"\x00" * (nbytes - 1)) * m, "little")

    def pack(xs):
        shifted = b"".join((x + half).to_bytes(nbytes, "little") for x in xs)
        return int.from_bytes(shifted, "little") - half * repunit(len(xs))

    nterms = min(len(a) + len(b) - 1, keep)
    prod = pack(a) * pack(b) + half * repunit(nterms)
    prod &= (1 << (width * nterms)) - 1
    raw = prod.to_bytes(width * nterms // 8, "little")
    return [
        int.from_bytes(raw[k * nbytes : (k + 1) * nbytes], "little") - half
        for k in range(nterms)
    ]


def tn_poly_power(params: TrinomialParams, n: int) -> Fraction:
    """Coefficient of x^n in (x^2 + b x + c)^n by repeated squaring."""
    scale = _lcm_den(params.b, params.c)
    base = [int(params.c * scale), int(params.b * scale), scale]
    if n == 0:
        return Fraction(1)
    keep = n + 1
    result = None
    power = base
    k = n
    while True:
        if k & 1:
            if k == 1:
                break
            result = power if result is None else _poly_mul(result, power, keep)
        k >>= 1
        power = _poly_mul(power, power, keep)
    # only coefficient n of the final product is needed
    if result is None:
        coeff = power[n] if len(power) > n else 0
    else:
        coeff = sum(
            result[i] * power[n - i]
            for i in range(max(0, n - len(power) + 1), min(len(result), n + 1))
        )
    return Fraction(coeff, scale**n)


def tn_recurrence(params: TrinomialParams, n_max: int) -> list[Fraction]:
    """T_0..T_{n_max} from n T_n = (2n-1) b T_{n-1} - (n-1) d T_{n-2}.

    Runs on the integer sequence U_n = D^n T_n with D clearing all
    denominators, so each division by n must be exact; a remainder raises
    :class:`RecurrenceError`.
    """
    D = params.b.denominator * params.c.denominator
    u = _integer_recurrence(int(params.b * D), int(params.d * D * D), n_max)
    return [Fraction(u[n], D**n) for n in range(n_max + 1)]


def _integer_recurrence(B: int, DD: int, n_max: int) -> list[int]:
    u = [1, B]
    for n in range(2, n_max + 1):
        num = (2 * n - 1) * B * u[n - 1] - (n - 1) * DD * u[n - 2]
        q, r = divmod(num, n)
        if r:
            raise RecurrenceError(f"inexact division at n={n} for B={B}, d={DD}")
        u.append(q)
    return u


def tn_series(params: TrinomialParams, n_max: int) -> list[Fraction]:
    """Taylor coefficients of 1/sqrt(1 - 2 b t + d t^2) over Q(sqrt c)."""
    c = params.c
    poly = [QuadExt(1, 0, c), QuadExt(-2 * params.b, 0, c), QuadExt(params.d, 0, c)]
    f = ps_pow_neg_half(PowerSeries.polynomial(poly, n_max + 1))
    return [x.to_rational() for x in f.coeffs]


def tn(params: TrinomialParams, n: int) -> Fraction:
    """Single exact value via the recurrence."""
    return tn_recurrence(params, n)[n]


def symmetry_reduce(params: TrinomialParams) -> tuple[TrinomialParams, bool]:
    """Map b to |b|; the flag says whether to multiply T_n by (-1)^n."""
    if params.b < 0:
        return TrinomialParams(-params.b, params.c), True
    return params, False
