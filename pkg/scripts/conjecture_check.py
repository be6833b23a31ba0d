#!/usr/bin/env python3
"""Print the three asymptotic statements for T_n(b, c) next to exact values.

    python scripts/conjecture_check.py --b 1 --c 16 --n 500
"""

from __future__ import annotations

import argparse
from fractions import Fraction

import mpmath

from trinomial.exact import TrinomialParams, tn_recurrence
from trinomial.singularity import Regime, classify_regime
from trinomial.translate import assemble_expansion, eval_expansion


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--b", type=Fraction, default=Fraction(1))
    parser.add_argument("--c", type=Fraction, default=Fraction(16))
    parser.add_argument("--n", type=int, default=500)
    parser.add_argument("--max-order", type=int, default=6)
    args = parser.parse_args()

    p = TrinomialParams(args.b, args.c)
    regime = classify_regime(p)
    exact = tn_recurrence(p, args.n)
    mpmath.mp.prec = 256
    t = mpmath.mpf(exact[-1].numerator) / exact[-1].denominator
    print(f"T_{args.n}{p} regime {regime.value}")
    if regime is Regime.CONJUGATE_PAIR:
        root = abs(t) ** (mpmath.mpf(1) / args.n)
        print(f"|T_n|^(1/n) = {mpmath.nstr(root, 12)}  vs sqrt(b^2-4c) = {mpmath.nstr(mpmath.sqrt(p.d), 12)}")
        orders = [0]
    else:
        orders = range(args.max_order + 1)
    for J in orders:
        exp = assemble_expansion(p, J)
        v, _ = eval_expansion(exp, args.n)
        rel = t / v - 1 if v else mpmath.mpf(0)
        print(f"J={J}: rel err {mpmath.nstr(rel, 6):>14}   g_J = {exp.corrections[-1].canonical()}")


if __name__ == "__main__":
    main()
