"""Command-line front end: roots, cdf-compare, verify, asymptotics, stieltjes.

CSV files are the canonical outputs; the optional SVG is a convenience
rendering with no numeric authority.  All floating text is printed with a
fixed digit count derived from the configured precision, and files are
written atomically, so identical configurations produce identical bytes.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

import mpmath

from .asymptotics import (
    RATIONAL_INV_E,
    b_ratio_report,
    ks_distance,
    ks_report,
    left_edge_report,
    reports_to_csv,
    right_edge_report,
    s_ratio_report,
)
from .config import ENV_CACHE_VAR, RunConfig, build_config, parse_n_list
from .errors import CacheFormatError
from .limitlaw import LimitLawContext, cdf, stieltjes_empirical, stieltjes_limit
from .textio import atomic_write_text, format_real, output_digits, parse_eps_token
from .verify import run_verify, report_lines, report_to_json
from .zeros import empirical_cdf, load_or_compute

RATIO_SWEEP = (50, 100, 200, 400)

STIELTJES_SAMPLES = (
    Fraction(2),
    Fraction(-1),
    mpmath.mpc(0.5, 0.5),
    mpmath.mpc(0, 1),
)

_SVG_STROKES = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _write(config: RunConfig, name: str, text: str) -> Path:
    path = config.output_dir / name
    atomic_write_text(path, text)
    print(f"wrote {path}")
    return path


def cmd_roots(config: RunConfig) -> int:
    """Refine all configured root measures and emit one `n,k,root` CSV."""
    digits = output_digits(config.precision_bits)
    lines = ["n,k,root"]
    for n in config.n_list:
        measure = load_or_compute(n, config.eps, config.cache_dir)
        for k, root in enumerate(measure.roots, start=1):
            lines.append(f"{n},{k},{format_real(root, digits)}")
    _write(config, "roots.csv", "\n".join(lines) + "\n")
    return 0


def _staircase_points(measure) -> list[tuple[float, float]]:
    jumps = measure.n - 1
    points = [(0.0, 0.0)]
    for k, root in enumerate(measure.roots, start=1):
        x = float(root)
        points.append((x, (k - 1) / jumps))
        points.append((x, k / jumps))
    points.append((1.0, 1.0))
    return points


def _svg_overlay(config: RunConfig, grid, limit_values, measures) -> str:
    # 640x640 canvas, 40px margins, y flipped so the origin sits bottom-left.
    def sx(x: float) -> str:
        return f"{40 + 560 * x:.2f}"

    def sy(y: float) -> str:
        return f"{600 - 560 * y:.2f}"

    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 640 640">',
        '<rect x="40" y="40" width="560" height="560" fill="none" stroke="#000"/>',
        '<text x="320" y="628" text-anchor="middle" font-size="14">x</text>',
        '<text x="14" y="320" text-anchor="middle" font-size="14" transform="rotate(-90 14 320)">CDF</text>',
    ]
    for frac in (0, 0.25, 0.5, 0.75, 1):
        parts.append(
            f'<text x="{sx(frac)}" y="614" text-anchor="middle" font-size="11">{frac:g}</text>'
        )
        parts.append(
            f'<text x="36" y="{sy(frac)}" text-anchor="end" font-size="11">{frac:g}</text>'
        )
    limit_pts = " ".join(
        f"{sx(float(x))},{sy(float(v))}" for x, v in zip(grid, limit_values)
    )
    parts.append(f'<polyline points="{limit_pts}" fill="none" stroke="#000" stroke-width="2"/>')
    parts.append('<text x="548" y="58" font-size="12">limit</text>')
    for idx, (n, measure) in enumerate(measures.items()):
        stroke = _SVG_STROKES[idx % len(_SVG_STROKES)]
        pts = " ".join(f"{sx(x)},{sy(y)}" for x, y in _staircase_points(measure))
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{stroke}" stroke-width="1.2"/>'
        )
        parts.append(
            f'<text x="548" y="{58 + 16 * (idx + 1)}" font-size="12" fill="{stroke}">n={n}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_cdf_compare(config: RunConfig) -> int:
    """Sample each empirical CDF against the limit CDF; emit CSV and KS summary."""
    digits = output_digits(config.precision_bits)
    ctx = LimitLawContext(config.precision_bits)
    measures = {n: load_or_compute(n, config.eps, config.cache_dir) for n in config.n_list}

    grid = [Fraction(i, 511) for i in range(512)]
    limit_values = [cdf(x, ctx) for x in grid]
    header = "x,F," + ",".join(f"Fn_{n}" for n in config.n_list)
    lines = [header]
    for x, limit_val in zip(grid, limit_values):
        row = [format_real(x, digits), format_real(limit_val, digits)]
        row += [
            format_real(empirical_cdf(measures[n], x), digits) for n in config.n_list
        ]
        lines.append(",".join(row))
    _write(config, "cdf_compare.csv", "\n".join(lines) + "\n")

    ks_lines = ["n,ks"]
    for n in config.n_list:
        value = ks_distance(n, ctx, config.eps, measure=measures[n])
        ks_lines.append(f"{n},{format_real(value, digits)}")
    _write(config, "ks_summary.csv", "\n".join(ks_lines) + "\n")

    if config.plot:
        _write(config, "cdf_compare.svg", _svg_overlay(config, grid, limit_values, measures))
    return 0


def cmd_verify(config: RunConfig) -> int:
    """Run the full invariant suite; exit 0 iff everything passes."""
    report = run_verify(config)
    _write(config, "verify_report.json", report_to_json(report))
    for line in report_lines(report):
        print(line)
    return 0 if report.all_passed else 1


def cmd_asymptotics(config: RunConfig) -> int:
    """Emit the convergence statistics as `statistic,param,value,target` CSV."""
    digits = output_digits(config.precision_bits)
    ctx = LimitLawContext(config.precision_bits)
    reports = [
        s_ratio_report(RATIO_SWEEP, RATIONAL_INV_E, ctx),
        b_ratio_report(RATIO_SWEEP, RATIONAL_INV_E, ctx),
        ks_report(config.n_list, ctx, config.eps, config.cache_dir),
        left_edge_report(config.n_list, 1, ctx, config.eps, config.cache_dir),
        right_edge_report(config.n_list, ctx, config.eps, config.cache_dir),
    ]
    _write(config, "convergence_report.csv", reports_to_csv(reports, digits))
    return 0


def cmd_stieltjes(config: RunConfig) -> int:
    """Tabulate empirical vs limiting Stieltjes transforms at sample points."""
    digits = output_digits(config.precision_bits)
    ctx = LimitLawContext(config.precision_bits)
    lines = ["n,z_re,z_im,empirical_re,empirical_im,limit_re,limit_im,abs_diff"]
    with mpmath.workprec(config.precision_bits + 32):
        for n in config.n_list:
            measure = load_or_compute(n, config.eps, config.cache_dir)
            for z in STIELTJES_SAMPLES:
                empirical = stieltjes_empirical(n, z, ctx, measure)
                limit_val = stieltjes_limit(z, ctx)
                emp_c = mpmath.mpc(empirical) if not isinstance(empirical, mpmath.mpc) else empirical
                diff = abs(emp_c - limit_val)
                z_c = mpmath.mpc(z) if not isinstance(z, mpmath.mpc) else z
                lines.append(
                    ",".join(
                        (
                            str(n),
                            format_real(z_c.real, digits),
                            format_real(z_c.imag, digits),
                            format_real(emp_c.real, digits),
                            format_real(emp_c.imag, digits),
                            format_real(limit_val.real, digits),
                            format_real(limit_val.imag, digits),
                            format_real(diff, digits),
                        )
                    )
                )
    _write(config, "stieltjes.csv", "\n".join(lines) + "\n")
    return 0


_COMMANDS = {
    "roots": cmd_roots,
    "cdf-compare": cmd_cdf_compare,
    "verify": cmd_verify,
    "asymptotics": cmd_asymptotics,
    "stieltjes": cmd_stieltjes,
}


def _build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--config", type=Path, default=None, help="key = value settings file")
    shared.add_argument(
        "--n",
        action="append",
        default=None,
        metavar="LIST",
        help="comma-separated polynomial indices (repeatable); each n >= 2",
    )
    shared.add_argument("--eps", default=None, help="root radius tolerance, e.g. 1e-30")
    shared.add_argument("--precision", type=int, default=None, help="working precision in bits")
    shared.add_argument("--cache-dir", type=Path, default=None, help=f"root cache directory (or ${ENV_CACHE_VAR})")
    shared.add_argument("--out", type=Path, default=None, help="output directory for CSV/SVG/JSON")
    shared.add_argument("--svg", action="store_true", help="also render the SVG overlay")

    parser = argparse.ArgumentParser(
        prog="eulerb-zeros",
        description="Certified zeros of a Eulerian-derived polynomial family and their limit law",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func in _COMMANDS.items():
        sub.add_parser(name, parents=[shared], help=func.__doc__)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    n_list = None
    if args.n is not None:
        n_list = parse_n_list(",".join(args.n))
    eps = parse_eps_token(args.eps) if args.eps is not None else None
    return build_config(
        config_file=args.config,
        n_list=n_list,
        eps=eps,
        precision_bits=args.precision,
        cache_dir=args.cache_dir,
        output_dir=args.out,
        plot=True if args.svg else None,
    )


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
        return _COMMANDS[args.command](config)
    except (ValueError, ArithmeticError, CacheFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
