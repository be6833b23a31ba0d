"""Singularities of F(t) = 1/sqrt(1 - 2 b t + d t^2) and local expansions.

Write rho_1 = b + 2s, rho_2 = b - 2s (s = sqrt c), so that
1 - 2 b t + d t^2 = (1 - rho_1 t)(1 - rho_2 t). Around t_i = 1/rho_i, with
u = 1 - t/t_i and r = rho_j/rho_i,

    F(t) = (1 - r)^(-1/2) * u^(-1/2) * (1 + w u)^(-1/2),   w = r / (1 - r),

and both (1 - r)^(-1) = rho_i / (4 sigma s) and w = rho_j / (4 sigma s) are
elements of Q(s) (sigma = +1 at t_1, -1 at t_2).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .algebra import PowerSeries, QuadExt, RadicalScalar, ps_pow_neg_half
from .exact import TrinomialParams, symmetry_reduce

DEFAULT_ORDER = 6


class Regime(enum.Enum):
    C_ZERO = "C_ZERO"
    D_ZERO = "D_ZERO"
    SINGLE_DOMINANT = "SINGLE_DOMINANT"
    SYMMETRIC_PAIR = "SYMMETRIC_PAIR"
    CONJUGATE_PAIR = "CONJUGATE_PAIR"
    TRIVIAL = "TRIVIAL"


class UnsupportedRegimeError(ValueError):
    pass


@dataclass(frozen=True)
class SingularityData:
    inv_location: QuadExt
    exponent: Fraction
    prefactor: RadicalScalar
    local_series: PowerSeries
    dominant: bool


def classify_regime(params: TrinomialParams) -> Regime:
    p, _ = symmetry_reduce(params)
    if p.c == 0:
        return Regime.TRIVIAL if p.b == 0 else Regime.C_ZERO
    if p.c < 0:
        return Regime.CONJUGATE_PAIR
    if p.d == 0:
        return Regime.D_ZERO
    if p.b == 0:
        return Regime.SYMMETRIC_PAIR
    return Regime.SINGLE_DOMINANT


def locate_singularities(params: TrinomialParams) -> list[tuple[QuadExt, bool]]:
    """Reciprocal singular points 1/t_i with dominance flags, t_1 first."""
    regime = classify_regime(params)
    b, c = params.b, params.c
    if regime is Regime.TRIVIAL:
        raise UnsupportedRegimeError("F(t) = 1 has no singularities")
    if regime is Regime.C_ZERO:
        return [(QuadExt(b, 0, c), True)]
    if regime is Regime.D_ZERO:
        return [(QuadExt(2 * b, 0, c), True)]
    rho1 = QuadExt(b, 2, c)
    rho2 = QuadExt(b, -2, c)
    if regime is Regime.SINGLE_DOMINANT:
        # |b + 2 sqrt c| > |b - 2 sqrt c|  iff  b sqrt c > 0
        if b > 0:
            return [(rho1, True), (rho2, False)]
        return [(rho2, True), (rho1, False)]
    return [(rho1, True), (rho2, True)]


def local_expansion(
    params: TrinomialParams, which: int = 0, order: int = DEFAULT_ORDER
) -> SingularityData:
    """Puiseux data at the ``which``-th entry of :func:`locate_singularities`.

    ``order`` is the number of known terms of the local series in u.
    """
    sings = locate_singularities(params)
    if not 0 <= which < len(sings):
        raise IndexError(f"singularity index {which} out of range for {params}")
    rho, dominant = sings[which]
    c = params.c
    one = QuadExt(1, 0, c)
    regime = classify_regime(params)
    if regime is Regime.C_ZERO:
        return SingularityData(
            rho, Fraction(-1), RadicalScalar(one, Fraction(1)),
            PowerSeries.polynomial([one], order), dominant,
        )
    if regime is Regime.D_ZERO:
        return SingularityData(
            rho, Fraction(-1, 2), RadicalScalar(one, Fraction(1)),
            PowerSeries.polynomial([one], order), dominant,
        )
    sigma = 1 if rho.q > 0 else -1
    other = rho.conj()
    # 1/(4 sigma s) = sigma s / (4c)
    inv4s = QuadExt(0, Fraction(sigma, 4) / c, c)
    base = rho * inv4s
    w = other * inv4s
    series = ps_pow_neg_half(PowerSeries.polynomial([one, w], order))
    return SingularityData(
        rho, Fraction(-1, 2), RadicalScalar(base, Fraction(1, 2)), series, dominant
    )
