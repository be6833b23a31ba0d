"""Empirical convergence checks of assembled expansions against exact T_n."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath

from .exact import TrinomialParams, tn_recurrence
from .singularity import Regime, UnsupportedRegimeError, classify_regime
from .translate import (
    DEFAULT_PRECISION,
    assemble_expansion,
    eval_expansion,
    oscillation_factor,
)

TAIL_FACTOR = 1.05
ROOT_TOLERANCE = 0.01
COS_THRESHOLD = 0.3
CSV_COLUMNS = ("n", "exact", "estimate", "rel_err", "scaled_err")


@dataclass(frozen=True)
class VerifyConfig:
    b: Fraction
    c: Fraction
    order: int = 2
    n_min: Optional[int] = None
    n_max: Optional[int] = None
    grid: Optional[str] = None
    precision: int = DEFAULT_PRECISION
    digits: int = 40

    @property
    def params(self) -> TrinomialParams:
        return TrinomialParams(self.b, self.c)

    def resolved(self) -> tuple[int, int, str]:
        """(n_min, n_max, grid) with regime-dependent defaults filled in."""
        if classify_regime(self.params) is Regime.CONJUGATE_PAIR:
            defaults = (1900, 2000, "linear")
        else:
            defaults = (16, 4096, "geometric")
        return (
            self.n_min if self.n_min is not None else defaults[0],
            self.n_max if self.n_max is not None else defaults[1],
            self.grid if self.grid is not None else defaults[2],
        )


def make_grid(n_min: int, n_max: int, kind: str) -> list[int]:
    if n_min < 1 or n_max < n_min:
        raise ValueError(f"bad grid range [{n_min}, {n_max}]")
    if kind == "linear":
        return list(range(n_min, n_max + 1))
    if kind == "geometric":
        grid, n = [], n_min
        while n <= n_max:
            grid.append(n)
            n *= 2
        return grid
    raise ValueError(f"unknown grid kind {kind!r}")


def tail_bounded(scaled: list, factor: float = TAIL_FACTOR) -> bool:
    """Final scaled error is at most ``factor`` times the minimum over the top half."""
    tail = scaled[len(scaled) // 2 :]
    if not tail:
        return False
    return tail[-1] <= factor * min(tail)


def format_exact(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _to_mpf(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


@dataclass(frozen=True)
class Row:
    n: int
    exact: str
    estimate: str
    rel_err: str
    scaled_err: str


@dataclass
class ConvergenceReport:
    b: str
    c: str
    regime: str
    order: int
    grid: list[int]
    rows: list[Row]
    max_scaled_err: str
    tail_bounded: bool
    elapsed_ms: float = 0.0
    root_test: Optional[dict] = None

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "b": self.b,
            "c": self.c,
            "regime": self.regime,
            "order": self.order,
            "grid": self.grid,
            "rows": [
                {k: getattr(r, k) for k in CSV_COLUMNS} for r in self.rows
            ],
            "max_scaled_err": self.max_scaled_err,
            "tail_bounded": self.tail_bounded,
        }
        if self.root_test is not None:
            out["root_test"] = self.root_test
        if timing:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(CSV_COLUMNS)
        for r in self.rows:
            writer.writerow([getattr(r, k) for k in CSV_COLUMNS])
        return buf.getvalue()


def run_verification(cfg: VerifyConfig) -> ConvergenceReport:
    start = time.perf_counter()
    params = cfg.params
    regime = classify_regime(params)
    if regime is Regime.TRIVIAL:
        raise UnsupportedRegimeError("nothing to verify for b = c = 0")
    n_min, n_max, kind = cfg.resolved()
    grid = make_grid(n_min, n_max, kind)
    exp = assemble_expansion(params, cfg.order)
    J = exp.order
    exact = tn_recurrence(params, grid[-1])
    digits = cfg.digits

    rows, scaled_vals = [], []
    root_vals, sign_ok = [], True
    with mpmath.workprec(cfg.precision):
        for n in grid:
            t = exact[n]
            est, _ = eval_expansion(exp, n, cfg.precision)
            if regime is Regime.C_ZERO and exp.exact_value(n) == t:
                rel = mpmath.mpf(0)
            elif est == 0:
                rel = mpmath.mpf(0) if t == 0 else mpmath.inf
            else:
                rel = _to_mpf(t) / est - 1
            scaled = abs(rel) * mpmath.mpf(n) ** (J + 1)
            scaled_vals.append(scaled)
            rows.append(
                Row(
                    n,
                    format_exact(t),
                    mpmath.nstr(est, digits),
                    mpmath.nstr(rel, digits),
                    mpmath.nstr(scaled, digits),
                )
            )
            if regime is Regime.CONJUGATE_PAIR:
                if t != 0:
                    log_t = mpmath.log(abs(t.numerator)) - mpmath.log(t.denominator)
                    root_vals.append(mpmath.exp(log_t / n))
                if abs(oscillation_factor(exp, n, cfg.precision)) > COS_THRESHOLD:
                    sign_ok = sign_ok and (t > 0) == (est > 0)

        root_test = None
        if regime is Regime.CONJUGATE_PAIR:
            target = mpmath.sqrt(_to_mpf(params.d))
            worst = max(root_vals)
            dev = abs(worst / target - 1)
            passed = bool(dev <= ROOT_TOLERANCE) and sign_ok
            root_test = {
                "target": mpmath.nstr(target, digits),
                "max_root": mpmath.nstr(worst, digits),
                "rel_dev": mpmath.nstr(dev, digits),
                "sign_agreement": sign_ok,
            }
        else:
            passed = tail_bounded(scaled_vals)
        max_scaled = max(scaled_vals)

    return ConvergenceReport(
        b=format_exact(params.b),
        c=format_exact(params.c),
        regime=regime.value,
        order=J,
        grid=grid,
        rows=rows,
        max_scaled_err=mpmath.nstr(max_scaled, digits),
        tail_bounded=passed,
        elapsed_ms=(time.perf_counter() - start) * 1000,
        root_test=root_test,
    )
