#!/usr/bin/env python3
"""Run the convergence-order check over a matrix of (b, c, J) and write CSV reports.

    python scripts/convergence_matrix.py --out-dir reports/
"""

from __future__ import annotations

import argparse
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from trinomial.verify import VerifyConfig, run_verification

F = Fraction

MATRIX = [
    VerifyConfig(F(1), F(16), 2),
    VerifyConfig(F(1), F(16), 4),
    VerifyConfig(F(4), F(1), 5),
    VerifyConfig(F(2), F(1), 3),
    VerifyConfig(F(0), F(1), 3),
    VerifyConfig(F(1), F(1), 4),
    VerifyConfig(F(-3), F(2), 6),
    VerifyConfig(F(1, 2), F(3, 4), 3),
    VerifyConfig(F(3), F(0), 2),
    VerifyConfig(F(1), F(-1), 0),
    VerifyConfig(F(2), F(-3), 0),
]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", type=Path, default=None)
    parser.add_argument("--n-max", type=int, default=None)
    args = parser.parse_args()

    failures = 0
    print(f"{'b':>5} {'c':>5} {'J':>2} {'regime':<16} {'final scaled err':>18}  verdict")
    for cfg in MATRIX:
        if args.n_max is not None:
            cfg = replace(cfg, n_max=args.n_max)
        report = run_verification(cfg)
        failures += not report.tail_bounded
        final = report.root_test["rel_dev"] if report.root_test else report.rows[-1].scaled_err
        print(
            f"{report.b:>5} {report.c:>5} {report.order:>2} {report.regime:<16} "
            f"{float(final):>18.6g}  {'ok' if report.tail_bounded else 'FAIL'}"
        )
        if args.out_dir is not None:
            args.out_dir.mkdir(parents=True, exist_ok=True)
            name = f"b{report.b}_c{report.c}_J{report.order}.csv".replace("/", "over")
            (args.out_dir / name).write_text(report.to_csv())
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
