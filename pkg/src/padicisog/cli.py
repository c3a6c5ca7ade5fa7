"""Command-line interface: single-curve analysis, corpus verification,
and series printing."""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from .formalgroup import (
    default_order,
    formal_expansion,
    isogeny_series,
    multiplication_series,
)
from .isogeny import velu
from .verify import CorpusEntry, analyze_entry, run_verification, select_kernel
from .weierstrass import WeierstrassModel


def _parse_curve(text: str) -> WeierstrassModel:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 5:
        raise argparse.ArgumentTypeError(
            "expected 5 comma-separated rationals a1,a2,a3,a4,a6"
        )
    return WeierstrassModel.from_list(parts)


def _parse_kernel(text: str):
    return [s.strip() for s in text.split(",")]


def _fr(x):
    return str(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _join_terms(pairs, var, order) -> str:
    """Render [(degree, coeff), ...] as "c1*z + c2*z^2 - ... + O(z^N)"."""
    out = ""
    for i, c in pairs:
        if not c:
            continue
        if out:
            sign = " - " if c < 0 else " + "
        else:
            sign = "-" if c < 0 else ""
        mag = abs(c)
        if i == 0:
            body = _fr(mag)
        else:
            power = var if i == 1 else f"{var}^{i}"
            body = power if mag == 1 else f"{_fr(mag)}*{power}"
        out += sign + body
    if not out:
        out = "0"
    return f"{out} + O({var}^{order})"


def format_power_series(ps, var="z") -> str:
    return _join_terms(((i, ps[i]) for i in range(ps.prec)), var, ps.prec)


def format_laurent(ls, var="z") -> str:
    pairs = (
        (i, ls.series[i - ls.shift])
        for i in range(ls.shift, ls.shift + ls.series.prec)
    )
    return _join_terms(pairs, var, ls.shift + ls.series.prec)


def default_corpus_path() -> str:
    return str(resources.files("padicisog").joinpath("data/corpus.jsonl"))


def cmd_analyze(args) -> int:
    entry = CorpusEntry(
        label=args.label,
        coefficients=[s.strip() for s in args.curve.split(",")],
        p=args.p,
        f=args.f,
        kernel=args.kernel,
    )
    analysis = analyze_entry(entry, precision=args.precision)
    print(json.dumps(analysis.to_record(), indent=2))
    return 0 if all(c.status != "fail" for c in analysis.checks) else 1


def cmd_verify(args) -> int:
    corpus = args.corpus or default_corpus_path()
    report = run_verification(
        corpus, precision=args.precision, fail_fast=args.fail_fast
    )
    text = report.render()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(json.dumps(report.summary(), indent=2))
    else:
        print(text)
    return 0 if report.all_passed() else 1


def cmd_series(args) -> int:
    m = _parse_curve(args.curve)
    p = args.p
    N = args.precision if args.precision is not None else default_order(p)
    if args.op == "formal":
        exp = formal_expansion(m, N)
        print("w(z) =", format_power_series(exp.w))
        print("x(z) =", format_laurent(exp.x))
        print("y(z) =", format_laurent(exp.y))
        print("omega(z)/dz =", format_power_series(exp.omega))
    elif args.op == "mulp":
        print(f"[{p}](z) =", format_power_series(multiplication_series(m, p, N)))
    else:  # phi
        h = select_kernel(m, p, args.kernel)
        iso = velu(m, h, p)
        phi = isogeny_series(iso, N)
        print("Phi(T) =", format_power_series(phi.series, var="T"))
        print("val_p(a1) =", phi.leading_valuation(p))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padicisog",
        description=(
            "Local invariants of elliptic curves over unramified p-adic "
            "fields: minimal models, Kodaira types, conductors, and the "
            "p-isogeny differential invariant."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_curve_args(sp, kernel=True):
        sp.add_argument(
            "--curve", required=True, metavar="a1,a2,a3,a4,a6",
            help="Weierstrass coefficients as rational strings",
        )
        sp.add_argument("--p", required=True, type=int, help="odd prime")
        if kernel:
            sp.add_argument(
                "--kernel", type=_parse_kernel, metavar="c0,c1,...",
                help="monic kernel polynomial, constant term first",
            )
        sp.add_argument(
            "--precision", type=int, default=None, metavar="N",
            help="series truncation order (default p^2 + 4)",
        )

    sp = sub.add_parser("analyze", help="full single-curve report")
    add_curve_args(sp)
    sp.add_argument("--f", type=int, default=1, help="residue degree of K")
    sp.add_argument("--label", default="curve", help="label for the report")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("verify", help="run all checks over a corpus")
    sp.add_argument(
        "--corpus", default=None,
        help="line-delimited corpus path (default: built-in corpus)",
    )
    sp.add_argument("--out", default=None, help="write the report here")
    sp.add_argument("--fail-fast", action="store_true")
    sp.add_argument("--precision", type=int, default=None)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("series", help="print a formal series")
    add_curve_args(sp)
    sp.add_argument(
        "--op", required=True, choices=("formal", "mulp", "phi"),
        help="formal expansion, multiplication by p, or the isogeny series",
    )
    sp.set_defaults(func=cmd_series)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
