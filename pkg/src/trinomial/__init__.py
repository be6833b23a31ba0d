"""Exact values and mechanised asymptotics of T_n(b,c) = [x^n](x^2 + b x + c)^n."""

from .algebra import PowerSeries, QuadExt, RadicalScalar, numeric_eval
from .exact import (
    TrinomialParams,
    symmetry_reduce,
    tn,
    tn_direct_sum,
    tn_poly_power,
    tn_recurrence,
    tn_series,
)
from .singularity import Regime, classify_regime, local_expansion, locate_singularities
from .translate import (
    AsymptoticExpansion,
    assemble_expansion,
    binom_asym_coeffs,
    eval_expansion,
    gamma_half_integer,
    phase_phi,
    translate_term,
)

__all__ = [
    "AsymptoticExpansion",
    "PowerSeries",
    "QuadExt",
    "RadicalScalar",
    "Regime",
    "TrinomialParams",
    "assemble_expansion",
    "binom_asym_coeffs",
    "classify_regime",
    "eval_expansion",
    "gamma_half_integer",
    "local_expansion",
    "locate_singularities",
    "numeric_eval",
    "phase_phi",
    "symmetry_reduce",
    "tn",
    "tn_direct_sum",
    "tn_poly_power",
    "tn_recurrence",
    "tn_series",
    "translate_term",
]
