"""Command-line front end: evaluation, series tabulation, verification, SVG.

Exit codes: 0 success, 1 domain/value error (one-line diagnostic on stderr),
2 usage error (from argparse).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .eisenstein import classical_G_qexp, gen_coeffs, q_bracket_coeffs, truncated_classical
from .lattice import render_svg
from .numerics import format_scalar_display, parse_scalar
from .partitions import Partition
from .verify import SuiteConfig, default_z_samples, run_suite
from . import eisenstein


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parteis",
        description="Partition-indexed lattice series: evaluate, tabulate, verify, draw.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_backend(p):
        p.add_argument(
            "--backend",
            choices=("rational", "float"),
            default="rational",
            help="scalar backend (default: rational, exact)",
        )

    p = sub.add_parser("eval-f", help="evaluate the single-partition series")
    p.add_argument("--partition", required=True, help='comma-separated parts, e.g. "3,2,2,1"')
    p.add_argument("--z", default="1+1i", help='nonreal z, e.g. "1+1i" or "1/2+-3/2i"')
    p.add_argument("--k", type=int, required=True, help="integer weight")
    add_backend(p)

    p = sub.add_parser("eval-g", help="evaluate the series summed over partitions of n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--z", default="1+1i")
    p.add_argument("--k", type=int, required=True)
    add_backend(p)

    p = sub.add_parser("series", help="tabulate generating-function coefficients")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--z", default="1+1i")
    p.add_argument("--nmax", type=int, default=20)
    p.add_argument("--q-bracket", action="store_true", help="multiply by the Euler product")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="write to a file instead of stdout")
    add_backend(p)

    p = sub.add_parser("truncated", help="square-truncated classical double sum")
    p.add_argument("--k2", type=int, required=True, help="positive even weight")
    p.add_argument("--z", default="1+1i")
    p.add_argument("--N", type=int, required=True, help="truncation bound")
    add_backend(p)

    p = sub.add_parser("classical", help="classical q-expansion comparison value")
    p.add_argument("--k2", type=int, required=True, help="even weight >= 4")
    p.add_argument("--tau", required=True, help="upper-half-plane point, float backend")
    p.add_argument("--terms", type=int, help="q-powers to keep (default: auto)")

    p = sub.add_parser("verify", help="run identity suites and write a JSON report")
    p.add_argument(
        "--suite",
        choices=("all", "lemma", "theorem", "corollary", "remark"),
        default="all",
    )
    p.add_argument("--out", default="report.json")
    p.add_argument("--n-max", type=int, help="override partition-size grid bound")
    p.add_argument("--series-n-max", type=int, help="override series truncation bound")
    p.add_argument("--n-remark", type=int, help="override decomposition truncation bound")
    p.add_argument(
        "--random-z",
        type=int,
        default=0,
        metavar="COUNT",
        help="append COUNT extra seeded random rational z samples",
    )
    p.add_argument("--seed", type=int, default=0, help="seed for --random-z")
    add_backend(p)

    p = sub.add_parser("lattice-svg", help="render the four-fold lattice of a partition")
    p.add_argument("--partition", required=True)
    p.add_argument("--z", default="1+1i")
    p.add_argument("--out", required=True)
    p.add_argument("--scale", type=float, default=20.0)
    p.add_argument("--dot-radius", type=float, default=3.0)
    p.add_argument("--no-axes", action="store_true")
    p.add_argument("--no-diagonal", action="store_true")

    return parser


def _random_z_samples(count: int, seed: int):
    import random
    from fractions import Fraction

    from .numerics import RationalComplex

    rng = random.Random(seed)
    out = []
    while len(out) < count:
        re = Fraction(rng.randint(-20, 20), rng.randint(1, 10))
        im = Fraction(rng.randint(-20, 20), rng.randint(1, 10))
        if im != 0:
            out.append(RationalComplex(re, im))
    return tuple(out)


def _cmd_eval_f(args) -> int:
    lam = Partition.from_text(args.partition)
    z = parse_scalar(args.z, args.backend)
    print(format_scalar_display(eisenstein.f(lam, z, args.k)))
    return 0


def _cmd_eval_g(args) -> int:
    z = parse_scalar(args.z, args.backend)
    print(format_scalar_display(eisenstein.g(args.n, z, args.k)))
    return 0


def _cmd_series(args) -> int:
    z = parse_scalar(args.z, args.backend)
    series = (
        q_bracket_coeffs(args.k, z, args.nmax)
        if args.q_bracket
        else gen_coeffs(args.k, z, args.nmax)
    )
    style = "rational" if args.backend == "rational" else "float"
    text = series.to_json(style) if args.format == "json" else series.to_csv(style)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_truncated(args) -> int:
    z = parse_scalar(args.z, args.backend)
    print(format_scalar_display(truncated_classical(args.k2, z, args.N)))
    return 0


def _cmd_classical(args) -> int:
    tau = parse_scalar(args.tau, "float")
    result = classical_G_qexp(args.k2, tau, args.terms)
    print(format_scalar_display(result.value))
    print(f"tail-bound {result.tail_bound:.3e} (terms={result.terms})")
    return 0


def _cmd_verify(args) -> int:
    overrides = {"backend": args.backend}
    if args.n_max is not None:
        overrides["n_max"] = args.n_max
    if args.series_n_max is not None:
        overrides["series_n_max"] = args.series_n_max
    if args.n_remark is not None:
        overrides["n_remark"] = args.n_remark
    if args.random_z:
        overrides["z_samples"] = default_z_samples() + _random_z_samples(
            args.random_z, args.seed
        )
    cfg = SuiteConfig(**overrides)
    report = run_suite(args.suite, cfg)
    Path(args.out).write_text(report.to_json())
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"{status} {check.check_id} residual={check.residual:.3e}")
    summary = report.summary()
    print(f"{summary['passed']}/{summary['total']} checks passed -> {args.out}")
    return 0 if report.all_passed else 1


def _cmd_lattice_svg(args) -> int:
    lam = Partition.from_text(args.partition)
    z = parse_scalar(args.z, "float")
    text = render_svg(
        lam,
        z,
        scale=args.scale,
        dot_radius=args.dot_radius,
        axes=not args.no_axes,
        diagonal=not args.no_diagonal,
    )
    Path(args.out).write_text(text)
    return 0


_COMMANDS = {
    "eval-f": _cmd_eval_f,
    "eval-g": _cmd_eval_g,
    "series": _cmd_series,
    "truncated": _cmd_truncated,
    "classical": _cmd_classical,
    "verify": _cmd_verify,
    "lattice-svg": _cmd_lattice_svg,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ValueError as exc:  # DomainError subclasses ValueError
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
