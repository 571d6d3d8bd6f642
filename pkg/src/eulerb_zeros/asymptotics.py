"""Convergence diagnostics: ratio limits, KS distance, and edge scalings.

Each statistic here has a known limit, and the shipped checks are trend
checks: the observed error shrinks along a doubling sequence of n or m.
Absolute rates are deliberately not asserted anywhere; first-run values are
frozen as regression anchors in the test suite instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import mpmath

from .eulerb_poly import (
    SHARED_TABLE,
    EulerianBTable,
    certified_tail_bound,
    min_terms_for_certified_tail,
    s_m_partial,
)
from .limitlaw import DEFAULT_CONTEXT, LimitLawContext, cdf, edge_log_coordinate
from .polynomial import int_eval_scaled
from .textio import format_real
from .zeros import DEFAULT_EPS, EmpiricalMeasure, load_or_compute

# Twelve-digit decimal stand-in for 1/e.  The ratio statistics take exact
# rational arguments so their series arithmetic stays exact; the 1.2e-12
# offset from the true 1/e is invisible at the percent-level tolerances the
# ratio trends are judged at.
RATIONAL_INV_E = Fraction(367879441171, 10**12)

RATIO_INTERVAL_WIDTH_CAP = Fraction(1, 10**20)


def s_ratio_interval(
    m: int, x: Fraction, tol: Fraction = Fraction(1, 10**25)
) -> tuple[Fraction, Fraction]:
    """Certified enclosure of (1/m) * S_{m+1}(x) / S_m(x).

    Both series are truncated at a common index K chosen so each certified
    tail is at most tol; the enclosure then brackets the true ratio by
    pairing each partial sum with its tail on the worst side.  Since every
    partial sum is at least 1, the enclosure width is of order tol and the
    guaranteed-width contract below 1e-20 holds with a wide margin.
    """
    x = Fraction(x)
    if not 0 < x < 1:
        raise ValueError("the ratio statistic needs rational x in (0, 1)")
    if m < 1:
        raise ValueError("m must be at least 1")
    tol = Fraction(tol)
    k_cut = max(
        min_terms_for_certified_tail(m, x, tol),
        min_terms_for_certified_tail(m + 1, x, tol),
    )
    s_low = s_m_partial(m, x, k_cut)
    s_tail = certified_tail_bound(m, x, k_cut)
    t_low = s_m_partial(m + 1, x, k_cut)
    t_tail = certified_tail_bound(m + 1, x, k_cut)
    lo = t_low / (m * (s_low + s_tail))
    hi = (t_low + t_tail) / (m * s_low)
    if hi - lo >= RATIO_INTERVAL_WIDTH_CAP:
        raise ArithmeticError(
            f"certified ratio interval too wide: {float(hi - lo):.3e}"
        )
    return lo, hi


def s_ratio(m: int, x: Fraction, tol: Fraction = Fraction(1, 10**25)) -> Fraction:
    """Midpoint of the certified enclosure; error below 1e-20 guaranteed."""
    lo, hi = s_ratio_interval(m, x, tol)
    return (lo + hi) / 2


def b_ratio(m: int, x: Fraction, table: EulerianBTable = SHARED_TABLE) -> Fraction:
    """(1/m) * B_{m+1}(x) / B_m(x), exactly, for rational x in (0, 1)."""
    x = Fraction(x)
    if not 0 < x < 1:
        raise ValueError("the ratio statistic needs rational x in (0, 1)")
    if m < 1:
        raise ValueError("m must be at least 1")
    num, den = x.numerator, x.denominator
    value_next = int_eval_scaled(table.row(m + 1), num, den)
    value_here = int_eval_scaled(table.row(m), num, den)
    # The den**deg scale factors differ by one power of den between m+1 and m.
    return Fraction(value_next, m * den * value_here)


def ks_distance(
    n: int,
    ctx: LimitLawContext = DEFAULT_CONTEXT,
    eps: Fraction = DEFAULT_EPS,
    cache_dir: Path | None = None,
    measure: EmpiricalMeasure | None = None,
) -> mpmath.mpf:
    """Sup distance between the empirical root CDF and the limit CDF.

    Both functions are monotone and the empirical one is a step function, so
    the sup is attained against a jump: at each root compare the limit CDF
    with the step's upper and lower values.
    """
    if measure is None:
        measure = load_or_compute(n, eps, cache_dir)
    jumps = measure.n - 1
    with mpmath.workprec(ctx.precision_bits + 32):
        worst = mpmath.mpf(0)
        for k, root in enumerate(measure.roots, start=1):
            limit_val = cdf(root, ctx)
            above = abs(mpmath.mpmathify(Fraction(k, jumps)) - limit_val)
            below = abs(mpmath.mpmathify(Fraction(k - 1, jumps)) - limit_val)
            worst = max(worst, above, below)
        return worst


def left_edge_scaling(
    n: int,
    k: int = 1,
    eps: Fraction = DEFAULT_EPS,
    cache_dir: Path | None = None,
    measure: EmpiricalMeasure | None = None,
) -> Fraction:
    """Scaling statistic x_{k,n} * n^2 / k^2 for the k-th smallest root.

    Approaches pi^4/16 for fixed small k as n grows; meaningful only for k
    well below n, which the caller chooses.
    """
    if measure is None:
        measure = load_or_compute(n, eps, cache_dir)
    if not 1 <= k <= measure.n - 1:
        raise ValueError(f"k must lie in [1, {measure.n - 1}]")
    return measure.roots[k - 1] * n**2 / k**2


def right_edge_required_bits(measure: EmpiricalMeasure) -> int:
    """Precision needed to resolve 1 - x for the largest root, plus headroom.

    The largest root approaches 1 exponentially fast in n, so any fixed
    precision eventually sees it as exactly 1.  The gap 1 - x is an exact
    rational, and its leading binary order plus 64 guard bits is enough for
    every downstream floating evaluation.
    """
    gap = 1 - measure.roots[-1]
    return max(0, gap.denominator.bit_length() - gap.numerator.bit_length()) + 64


def right_edge_scaling(
    n: int,
    ctx: LimitLawContext = DEFAULT_CONTEXT,
    eps: Fraction = DEFAULT_EPS,
    cache_dir: Path | None = None,
    measure: EmpiricalMeasure | None = None,
) -> mpmath.mpf:
    """Edge-log statistic L(x_{n-1,n}) / (2n) for the largest root.

    Tends to 1; the working precision is escalated automatically from the
    certified gap so the statistic never silently degrades.  A refinement
    radius not far below 1 - x is a hard error rather than a wrong number.
    """
    if measure is None:
        measure = load_or_compute(n, eps, cache_dir)
    top = measure.roots[-1]
    radius = measure.radii[-1]
    gap = 1 - top
    if 128 * radius > gap:
        raise ArithmeticError(
            "largest root's refinement radius is not small against 1 - x; "
            "recompute the measure with a finer eps"
        )
    min_bits = right_edge_required_bits(measure)
    big_l = edge_log_coordinate(top, ctx, min_bits=min_bits)
    with mpmath.workprec(max(ctx.precision_bits, min_bits) + 32):
        return big_l / (2 * n)


@dataclass(frozen=True)
class ConvergenceReport:
    """One statistic sampled along a parameter sequence, with its limit."""

    statistic: str
    params: tuple[int, ...]
    values: tuple
    target: object = None

    def __post_init__(self) -> None:
        if len(self.params) != len(self.values):
            raise ValueError("params and values must have equal length")
        if not self.statistic:
            raise ValueError("statistic label must be nonempty")
        for value in self.values:
            if isinstance(value, Fraction):
                continue
            if not mpmath.isfinite(mpmath.mpmathify(value)):
                raise ValueError("report values must be finite")


def reports_to_csv(reports: Sequence[ConvergenceReport], digits: int) -> str:
    """Render reports as `statistic,param,value,target` CSV, fixed digit count."""
    lines = ["statistic,param,value,target"]
    for report in reports:
        target = "" if report.target is None else format_real(report.target, digits)
        for param, value in zip(report.params, report.values):
            lines.append(f"{report.statistic},{param},{format_real(value, digits)},{target}")
    return "\n".join(lines) + "\n"


def s_ratio_report(
    m_values: Sequence[int], x: Fraction, ctx: LimitLawContext = DEFAULT_CONTEXT
) -> ConvergenceReport:
    x = Fraction(x)
    values = tuple(s_ratio(m, x) for m in m_values)
    with mpmath.workprec(ctx.precision_bits + 32):
        target = 2 / (-mpmath.log(mpmath.mpmathify(x)))
    return ConvergenceReport("s_ratio", tuple(m_values), values, target)


def b_ratio_report(
    m_values: Sequence[int], x: Fraction, ctx: LimitLawContext = DEFAULT_CONTEXT
) -> ConvergenceReport:
    x = Fraction(x)
    values = tuple(b_ratio(m, x) for m in m_values)
    with mpmath.workprec(ctx.precision_bits + 32):
        target = 2 * (1 - mpmath.mpmathify(x)) / (-mpmath.log(mpmath.mpmathify(x)))
    return ConvergenceReport("b_ratio", tuple(m_values), values, target)


def ks_report(
    n_values: Sequence[int],
    ctx: LimitLawContext = DEFAULT_CONTEXT,
    eps: Fraction = DEFAULT_EPS,
    cache_dir: Path | None = None,
) -> ConvergenceReport:
    values = tuple(ks_distance(n, ctx, eps, cache_dir) for n in n_values)
    return ConvergenceReport("ks_distance", tuple(n_values), values, mpmath.mpf(0))


def left_edge_report(
    n_values: Sequence[int],
    k: int = 1,
    ctx: LimitLawContext = DEFAULT_CONTEXT,
    eps: Fraction = DEFAULT_EPS,
    cache_dir: Path | None = None,
) -> ConvergenceReport:
    values = tuple(left_edge_scaling(n, k, eps, cache_dir) for n in n_values)
    with mpmath.workprec(ctx.precision_bits + 32):
        target = mpmath.pi**4 / 16
    return ConvergenceReport(f"left_edge_k{k}", tuple(n_values), values, target)


def right_edge_report(
    n_values: Sequence[int],
    ctx: LimitLawContext = DEFAULT_CONTEXT,
    eps: Fraction = DEFAULT_EPS,
    cache_dir: Path | None = None,
) -> ConvergenceReport:
    values = tuple(right_edge_scaling(n, ctx, eps, cache_dir) for n in n_values)
    return ConvergenceReport("right_edge", tuple(n_values), values, mpmath.mpf(1))
