"""Command line interface: ``trinomial exact | expand | approx | verify``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

import mpmath

from .algebra import QuadExt, RadicalScalar
from .exact import (
    TrinomialParams,
    tn_direct_sum,
    tn_poly_power,
    tn_recurrence,
    tn_series,
)
from .singularity import Regime, UnsupportedRegimeError, classify_regime
from .translate import (
    DEFAULT_PRECISION,
    assemble_expansion,
    eval_expansion,
    oscillation_factor,
    phase_phi,
)
from .verify import VerifyConfig, format_exact, run_verification

EXIT_OK, EXIT_PARSE, EXIT_MISMATCH, EXIT_REGIME, EXIT_VERIFY = 0, 2, 3, 4, 5
EXACT_COMPARE_LIMIT = 10**5

_NUMBER = re.compile(r"[+-]?(\d+(/\d+)?|\d*\.\d+|\d+\.\d*)")


def parse_rational(text: str) -> Fraction:
    """Integers, fractions ``p/q`` and plain decimals; nothing float-like."""
    text = text.strip()
    if not _NUMBER.fullmatch(text):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise argparse.ArgumentTypeError(f"zero denominator: {text!r}") from None


def _quad_json(x: QuadExt, with_c: bool = True) -> dict:
    x = x.canonical()
    out = {"p": format_exact(x.p), "q": format_exact(x.q)}
    if with_c:
        out["c"] = format_exact(x.c)
    return out


def _radical_json(r: RadicalScalar) -> dict:
    return {"base": _quad_json(r.base), "exponent": format_exact(r.exponent)}


# -- exact ---------------------------------------------------------------


def _exact_values(params, method, ns):
    n_max = ns[-1]
    if method == "sum":
        return [tn_direct_sum(params, n) for n in ns]
    if method == "power":
        return [tn_poly_power(params, n) for n in ns]
    if method == "recurrence":
        seq = tn_recurrence(params, n_max)
    else:
        seq = tn_series(params, n_max)
    return [seq[n] for n in ns]


def cmd_exact(args) -> int:
    params = TrinomialParams(args.b, args.c)
    ns = [args.n] if args.n is not None else list(range(args.n_max + 1))
    if args.method == "all":
        results = {m: _exact_values(params, m, ns) for m in ("sum", "power", "recurrence", "series")}
        values = results["sum"]
        mismatched = [m for m, v in results.items() if v != values]
        if mismatched:
            print(f"cross-check mismatch: {', '.join(mismatched)}", file=sys.stderr)
            return EXIT_MISMATCH
    else:
        values = _exact_values(params, args.method, ns)
    if args.format == "json":
        print(json.dumps([format_exact(v) for v in values]))
    else:
        for v in values:
            print(format_exact(v))
    return EXIT_OK


# -- expand --------------------------------------------------------------


def expansion_json(exp) -> dict:
    lead = exp.terms[0]
    out = {
        "b": format_exact(exp.params.b),
        "c": format_exact(exp.params.c),
        "regime": exp.regime.value,
        "order": exp.order,
        "growth": _quad_json(lead.growth),
        "prefactor": _radical_json(lead.prefactor),
        "corrections": [_quad_json(g, with_c=False) for g in lead.corrections],
        "pi_power": format_exact(lead.pi_power),
        "poly_exponent": format_exact(lead.poly_exponent),
        "sign_flip": exp.sign_flip,
        "singularities": [
            {
                "growth": _quad_json(t.growth),
                "prefactor": _radical_json(t.prefactor),
                "corrections": [_quad_json(g, with_c=False) for g in t.corrections],
            }
            for t in exp.terms
        ],
    }
    if exp.oscillation is not None:
        out["oscillation"] = {
            "modulus": _radical_json(exp.oscillation.modulus),
            "unit": _quad_json(exp.oscillation.unit),
            "phase": mpmath.nstr(phase_phi(exp.params).value, 40),
        }
    return out


def expansion_text(exp) -> str:
    lead = exp.terms[0]
    sign = "(-1)^n * " if exp.sign_flip else ""
    lines = [f"regime: {exp.regime.value}", f"order: {exp.order}"]
    if exp.regime is Regime.C_ZERO:
        lines.append(f"T_n = {sign}{lead.growth.canonical()}^n  (exact)")
        lines.append("g = [1]")
        return "\n".join(lines)
    growth = lead.growth.canonical()
    if exp.oscillation is not None:
        d = exp.oscillation.modulus.base.canonical()
        c = exp.params.c
        lines.append(
            f"T_n ~ {sign}({-c})^(-1/4) * ({d})^(n/2+1/4) * "
            f"cos((n+1/2)*phi - pi/4) / sqrt(pi*n)"
        )
        lines.append(f"phi = {mpmath.nstr(phase_phi(exp.params).value, 20)}")
    else:
        pref = RadicalScalar(lead.prefactor.base.canonical(), lead.prefactor.exponent)
        mult = "2 * " if exp.parity_mask else ""
        lines.append(
            f"T_n ~ {sign}{mult}{pref} * ({growth})^n * n^(-1/2) * pi^(-1/2) * sum_j g_j n^(-j)"
        )
        if exp.parity_mask:
            lines.append("(vanishes for odd n)")
    lines.append("g = [" + ", ".join(str(g.canonical()) for g in lead.corrections) + "]")
    return "\n".join(lines)


def cmd_expand(args) -> int:
    params = TrinomialParams(args.b, args.c)
    try:
        exp = assemble_expansion(params, args.order)
    except UnsupportedRegimeError as err:
        print(f"unsupported regime: {err}", file=sys.stderr)
        return EXIT_REGIME
    if args.format == "json":
        print(json.dumps(expansion_json(exp), indent=2))
    else:
        print(expansion_text(exp))
    return EXIT_OK


# -- approx --------------------------------------------------------------


def cmd_approx(args) -> int:
    if args.precision < 64:
        print("precision must be at least 64 bits", file=sys.stderr)
        return EXIT_PARSE
    params = TrinomialParams(args.b, args.c)
    n, digits = args.n, args.digits
    if classify_regime(params) is Regime.TRIVIAL or n == 0:
        value = Fraction(1 if n == 0 else 0)
        print(f"estimate: {format_exact(value)}")
        return EXIT_OK
    exp = assemble_expansion(params, args.order)
    with mpmath.workprec(args.precision):
        est, log_abs = eval_expansion(exp, n, args.precision)
        print(f"estimate: {mpmath.nstr(est, digits)}")
        print(f"log_abs: {mpmath.nstr(log_abs, digits)}")
        if exp.oscillation is not None:
            cos = oscillation_factor(exp, n, args.precision)
            print(f"cos_factor: {mpmath.nstr(cos, digits)}")
        if args.compare and n <= EXACT_COMPARE_LIMIT:
            t = tn_recurrence(params, n)[n]
            print(f"exact: {mpmath.nstr(mpmath.mpf(t.numerator) / t.denominator, digits)}")
            if est != 0:
                rel = (mpmath.mpf(t.numerator) / t.denominator) / est - 1
                print(f"rel_err: {mpmath.nstr(rel, digits)}")
    return EXIT_OK


# -- verify --------------------------------------------------------------


def cmd_verify(args) -> int:
    cfg = VerifyConfig(
        args.b, args.c, args.order, args.n_min, args.n_max, args.grid,
        args.precision, args.digits,
    )
    try:
        report = run_verification(cfg)
    except UnsupportedRegimeError as err:
        print(f"unsupported regime: {err}", file=sys.stderr)
        return EXIT_REGIME
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    text = report.to_csv() if args.format == "csv" else report.to_json(args.timing)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(
        f"tail_bounded={str(report.tail_bounded).lower()} "
        f"max_scaled_err={mpmath.nstr(mpmath.mpf(report.max_scaled_err), 6)}",
        file=sys.stderr,
    )
    return EXIT_OK if report.tail_bounded else EXIT_VERIFY


# -- parser --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trinomial",
        description="Exact values and asymptotic expansions of T_n(b,c) = [x^n](x^2+bx+c)^n.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--b", type=parse_rational, required=True)
        p.add_argument("--c", type=parse_rational, required=True)

    p = sub.add_parser("exact", help="exact T_n")
    common(p)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--n", type=int)
    which.add_argument("--n-max", type=int)
    p.add_argument(
        "--method",
        choices=["sum", "power", "recurrence", "series", "all"],
        default="recurrence",
    )
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("expand", help="symbolic asymptotic expansion")
    common(p)
    p.add_argument("--order", type=int, default=5)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("approx", help="evaluate the expansion at n")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--order", type=int, default=5)
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    p.add_argument("--digits", type=int, default=40)
    p.add_argument("--compare", action=argparse.BooleanOptionalAction, default=True)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("verify", help="convergence-order report")
    common(p)
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--n-min", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--grid", choices=["geometric", "linear"])
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    p.add_argument("--digits", type=int, default=40)
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.add_argument("--out")
    p.add_argument("--timing", action="store_true", help="include elapsed_ms in JSON")
    p.set_defaults(func=cmd_verify)
    return parser


def _join_negative_values(argv: list[str]) -> list[str]:
    # argparse only recognises -N and -N.M as negative numbers, not -p/q
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--b", "--c") and i + 1 < len(argv) and re.match(r"-[\d.]", argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_negative_values(argv))
    for name in ("n", "n_max", "n_min", "order"):
        value = getattr(args, name, None)
        if value is not None and value < 0:
            parser.error(f"--{name.replace('_', '-')} must be nonnegative")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
