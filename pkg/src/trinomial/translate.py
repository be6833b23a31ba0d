"""Transfer of local expansions to coefficient asymptotics.

Each Puiseux term ``C (1 - t/t_i)^(-alpha)`` becomes
``C binom(n + alpha - 1, n) t_i^(-n)``, and the binomial is expanded as

    binom(n + alpha - 1, n) = n^(alpha - 1) / Gamma(alpha) * (1 + sum_j e_j(alpha) n^(-j)).

The e_j are generated exactly by exponentiating the Stirling series of
log Gamma(n + alpha) - log Gamma(n + 1), whose 1/n^k coefficient is
(-1)^(k+1) (B_{k+1}(alpha) - B_{k+1}(1)) / (k (k + 1)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import mpmath

from .algebra import (
    PowerSeries,
    QuadExt,
    RadicalScalar,
    numeric_eval,
    ps_exp,
)
from .exact import TrinomialParams, symmetry_reduce
from .singularity import (
    Regime,
    UnsupportedRegimeError,
    classify_regime,
    local_expansion,
    locate_singularities,
)

DEFAULT_PRECISION = 256
HALF = Fraction(1, 2)


# -- Bernoulli machinery ------------------------------------------------


@lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """Bernoulli number B_m with B_1 = -1/2."""
    if m == 0:
        return Fraction(1)
    return -sum(math.comb(m + 1, k) * bernoulli(k) for k in range(m)) / (m + 1)


def bernoulli_poly(m: int, x: Fraction) -> Fraction:
    return sum(math.comb(m, k) * bernoulli(k) * x ** (m - k) for k in range(m + 1))


# -- translation coefficients -------------------------------------------


@dataclass(frozen=True)
class TranslationCoeffs:
    alpha: Fraction
    coeffs: tuple[Fraction, ...]

    def __getitem__(self, j: int) -> Fraction:
        """e_j with the convention e_0 = 1."""
        return Fraction(1) if j == 0 else self.coeffs[j - 1]


@lru_cache(maxsize=None)
def _binom_asym(alpha: Fraction, J: int) -> tuple[Fraction, ...]:
    log_series = [Fraction(0)] + [
        (-1) ** (k + 1)
        * (bernoulli_poly(k + 1, alpha) - bernoulli_poly(k + 1, Fraction(1)))
        / (k * (k + 1))
        for k in range(1, J + 1)
    ]
    return tuple(ps_exp(PowerSeries(log_series, J + 1)).coeffs[1:])


def binom_asym_coeffs(alpha, J: int) -> TranslationCoeffs:
    """e_1(alpha) .. e_J(alpha) as exact rationals."""
    alpha = Fraction(alpha)
    if alpha.denominator == 1 and alpha <= 0:
        raise ValueError(f"alpha = {alpha} is a pole of Gamma")
    if J < 0:
        raise ValueError("J must be nonnegative")
    return TranslationCoeffs(alpha, _binom_asym(alpha, J))


def gamma_half_integer(alpha) -> Fraction:
    """Rational r with Gamma(alpha) = r * sqrt(pi), for alpha in Z + 1/2."""
    alpha = Fraction(alpha)
    if alpha.denominator != 2:
        raise ValueError(f"{alpha} is not a half-integer")
    r = Fraction(1)
    x = HALF
    while x < alpha:
        r *= x
        x += 1
    while x > alpha:
        x -= 1
        r /= x
    return r


@dataclass(frozen=True)
class TranslatedTerm:
    """``scalar * pi^pi_power * growth^n * n^n_power * (1 + sum e_j n^-j)``.

    ``scalar`` still has to be multiplied by ``prefactor`` when one is given.
    """

    growth: QuadExt
    n_power: Fraction
    scalar: QuadExt
    pi_power: Fraction
    corrections: tuple[Fraction, ...]
    prefactor: Optional[RadicalScalar] = None


def translate_term(
    coeff: QuadExt,
    alpha,
    growth: QuadExt,
    J: int,
    prefactor: Optional[RadicalScalar] = None,
) -> TranslatedTerm:
    """Transfer ``prefactor * coeff * (1 - t/t_i)^(-alpha)``."""
    alpha = Fraction(alpha)
    if alpha.denominator == 2:
        inv_gamma, pi_power = 1 / gamma_half_integer(alpha), -HALF
    elif alpha.denominator == 1 and alpha > 0:
        inv_gamma, pi_power = Fraction(1, math.factorial(int(alpha) - 1)), Fraction(0)
    else:
        raise ValueError(f"cannot normalise Gamma({alpha}) exactly")
    e = binom_asym_coeffs(alpha, J)
    if coeff == 0:
        return TranslatedTerm(
            growth, alpha - 1, coeff * 0, pi_power, (Fraction(0),) * J, prefactor
        )
    return TranslatedTerm(
        growth, alpha - 1, coeff * inv_gamma, pi_power, e.coeffs, prefactor
    )


# -- assembled expansions -----------------------------------------------


@dataclass(frozen=True)
class SingularityTerm:
    """One singularity's contribution
    ``prefactor * pi^pi_power * growth^n * n^poly_exponent * sum_j g_j n^-j``."""

    growth: QuadExt
    poly_exponent: Fraction
    prefactor: RadicalScalar
    pi_power: Fraction
    corrections: tuple[QuadExt, ...]


@dataclass(frozen=True)
class Oscillation:
    """Leading form (-c)^(-1/4) d^(n/2 + 1/4) cos((n + 1/2) phi - pi/4) / sqrt(pi n).

    ``unit`` is b + 2s, so exp(i phi) = unit / modulus.
    """

    modulus: RadicalScalar
    unit: QuadExt


@dataclass(frozen=True)
class AsymptoticExpansion:
    params: TrinomialParams
    regime: Regime
    order: int
    terms: tuple[SingularityTerm, ...]
    sign_flip: bool = False
    oscillation: Optional[Oscillation] = None
    parity_mask: bool = False

    @property
    def corrections(self) -> tuple[QuadExt, ...]:
        return self.terms[0].corrections

    @property
    def growth(self) -> QuadExt:
        return self.terms[0].growth

    @property
    def prefactor(self) -> RadicalScalar:
        return self.terms[0].prefactor

    def exact_value(self, n: int) -> Fraction:
        """Closed form, only for the pole regime where the expansion terminates."""
        if self.regime is not Regime.C_ZERO:
            raise UnsupportedRegimeError("expansion is not exact in this regime")
        return self.params.b**n


def _regrouped_corrections(data, J: int) -> tuple[QuadExt, ...]:
    """g_m = sum_{k + j = m} h_k / r_k * e_j(1/2 - k), with Gamma(1/2 - k) = r_k sqrt(pi)."""
    h = data.local_series
    one = h[0] * 0 + 1
    g = [one * 0 for _ in range(J + 1)]
    for k in range(J + 1):
        term = translate_term(h[k], HALF - k, data.inv_location, J - k)
        if term.scalar == 0:
            continue
        # term.scalar = h_k / r_k; the overall 1/sqrt(pi) is shared
        for j in range(J - k + 1):
            e_j = Fraction(1) if j == 0 else term.corrections[j - 1]
            g[k + j] = g[k + j] + term.scalar * e_j
    return tuple(g)


def assemble_expansion(params: TrinomialParams, J: int) -> AsymptoticExpansion:
    """Full expansion to relative order n^-J (leading order only for c < 0)."""
    regime = classify_regime(params)
    if regime is Regime.TRIVIAL:
        raise UnsupportedRegimeError("T_n(0, 0) vanishes for n >= 1")
    reduced, flip = symmetry_reduce(params)
    c = reduced.c
    one = QuadExt(1, 0, c)

    if regime is Regime.C_ZERO:
        data = local_expansion(reduced, 0, 1)
        term = SingularityTerm(
            data.inv_location, Fraction(0), data.prefactor, Fraction(0), (one,)
        )
        return AsymptoticExpansion(params, regime, J, (term,), flip)

    if regime is Regime.CONJUGATE_PAIR:
        terms = []
        for i in range(2):
            data = local_expansion(reduced, i, 1)
            terms.append(
                SingularityTerm(data.inv_location, -HALF, data.prefactor, -HALF, (one,))
            )
        osc = Oscillation(
            RadicalScalar(QuadExt(reduced.d, 0, c), HALF), QuadExt(reduced.b, 2, c)
        )
        return AsymptoticExpansion(params, regime, 0, tuple(terms), flip, osc)

    n_sing = 2 if regime is Regime.SYMMETRIC_PAIR else 1
    terms = []
    for i in range(n_sing):
        data = local_expansion(reduced, i, J + 1)
        terms.append(
            SingularityTerm(
                data.inv_location,
                -HALF,
                data.prefactor,
                -HALF,
                _regrouped_corrections(data, J),
            )
        )
    return AsymptoticExpansion(
        params, regime, J, tuple(terms), flip,
        parity_mask=regime is Regime.SYMMETRIC_PAIR,
    )


@dataclass(frozen=True)
class Phi:
    value: mpmath.mpf
    precision_bits: int = field(default=DEFAULT_PRECISION)


def phase_phi(params: TrinomialParams, precision_bits: int = DEFAULT_PRECISION) -> Phi:
    """The angle phi with exp(i phi) = (b + 2i sqrt(-c)) / sqrt(b^2 - 4c)."""
    if params.c >= 0:
        raise ValueError("phase is only defined for c < 0")
    with mpmath.workprec(precision_bits + 32):
        two_root = 2 * mpmath.sqrt(mpmath.mpf(-params.c.numerator) / params.c.denominator)
        b = mpmath.mpf(params.b.numerator) / params.b.denominator
        phi = mpmath.atan2(two_root, b)
    with mpmath.workprec(precision_bits):
        return Phi(+phi, precision_bits)


def _eval_term(term: SingularityTerm, n: int, prec: int):
    pref = numeric_eval(term.prefactor, prec, real=False)
    rho = numeric_eval(term.growth, prec, real=False)
    series = sum(
        numeric_eval(g, prec, real=False) * mpmath.mpf(n) ** (-j)
        for j, g in enumerate(term.corrections)
    )
    return (
        pref
        * mpmath.power(rho, n)
        * mpmath.power(n, _mp(term.poly_exponent))
        * mpmath.power(mpmath.pi, _mp(term.pi_power))
        * series
    )


def _mp(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def oscillation_factor(exp: AsymptoticExpansion, n: int, precision_bits: int = DEFAULT_PRECISION):
    """cos((n + 1/2) phi - pi/4) for the reduced parameters."""
    reduced, _ = symmetry_reduce(exp.params)
    phi = phase_phi(reduced, precision_bits).value
    with mpmath.workprec(precision_bits + 32):
        v = mpmath.cos((n + mpmath.mpf(1) / 2) * phi - mpmath.pi / 4)
    with mpmath.workprec(precision_bits):
        return +v


def eval_expansion(
    exp: AsymptoticExpansion, n: int, precision_bits: int = DEFAULT_PRECISION
):
    """Return ``(value, log_abs)`` of the estimate for T_n."""
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    if n < 1:
        raise ValueError("n must be positive")
    prec = precision_bits
    with mpmath.workprec(prec + 32):
        sign = -1 if exp.sign_flip and n % 2 else 1
        if exp.regime is Regime.C_ZERO:
            v = exp.exact_value(n)
            value = mpmath.mpf(v.numerator) / v.denominator
            log_abs = mpmath.log(abs(value)) if value else mpmath.ninf
        elif exp.oscillation is not None:
            reduced, _ = symmetry_reduce(exp.params)
            d = numeric_eval(exp.oscillation.modulus, prec + 32, real=True)
            cosf = oscillation_factor(exp, n, prec + 32)
            neg_c = _mp(-reduced.c)
            log_amp = (
                (n + mpmath.mpf(1) / 2) * mpmath.log(d)
                - mpmath.log(neg_c) / 4
                - mpmath.log(mpmath.pi * n) / 2
            )
            value = sign * mpmath.exp(log_amp) * cosf
            log_abs = log_amp + mpmath.log(abs(cosf)) if cosf else mpmath.ninf
        elif exp.parity_mask and n % 2:
            value, log_abs = mpmath.mpf(0), mpmath.ninf
        else:
            v = _eval_term(exp.terms[0], n, prec + 32)
            if exp.parity_mask:
                v = 2 * v
            value = sign * mpmath.re(v)
            log_abs = mpmath.log(abs(value)) if value else mpmath.ninf
    with mpmath.workprec(prec):
        return +value, +log_abs
