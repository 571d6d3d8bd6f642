"""The named invariant suite behind the `verify` subcommand.

Every check carries a measured value and its tolerance so a failing run
reports evidence, not just a verdict.  Checks whose tolerances are part of
the library's external contract run at a pinned 128-bit context no matter
what the configuration says; the configuration still chooses which n get
structural checks, the root tolerance, the cache, and the precision used
for the adaptive-escalation report.

Trend checks run on fixed canonical sweeps (n doubling through 64, m
doubling through 400): they are statements about the family, not about one
run's configuration, and keeping them fixed keeps pass/fail meaning stable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .asymptotics import (
    RATIONAL_INV_E,
    b_ratio,
    ks_distance,
    left_edge_scaling,
    right_edge_required_bits,
    right_edge_scaling,
    s_ratio,
    s_ratio_interval,
)
from .config import RunConfig
from .eulerb_poly import (
    SHARED_TABLE,
    certified_tail_bound,
    s_m_partial,
    series_identity_check,
)
from .limitlaw import (
    LimitLawContext,
    cdf,
    cdf_quantile_residual,
    density,
    density_normalization_bulk,
    density_normalization_substituted,
    inversion_density,
    quantile,
    quantile_cdf_residual,
    stieltjes_empirical,
    stieltjes_limit,
    stieltjes_limit_halved_variant,
    stieltjes_quadrature,
)
from .polynomial import ExactPolynomial
from .textio import format_real, output_digits
from .xi_family import build_xi, log_derivative_direct, log_derivative_formula, xi_from_text, xi_to_text
from .zeros import (
    load_or_compute,
    measure_from_text,
    measure_to_text,
    sturm_chain,
    sturm_count,
    verify_cached_measure,
)

PINNED_BITS = 128
KS_SWEEP = (8, 16, 32, 64)
RATIO_SWEEP = (50, 100, 200, 400)
EDGE_SWEEP = (16, 32, 64)
IDENTITY_DEGREES = tuple(range(2, 21))
IDENTITY_POINTS = (
    Fraction(1, 8),
    Fraction(1, 3),
    Fraction(1, 2),
    Fraction(2, 3),
    Fraction(7, 8),
)

# Frozen first-run anchors (recomputed from scratch whenever the suite runs;
# the constants only pin the regression comparison).
KS_N2_ANCHOR = "0.50537670322312186185"
RIGHT_EDGE_N2_ANCHOR = "0.77224247621115075448"


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: str
    tolerance: str


@dataclass(frozen=True)
class EscalationRecord:
    n: int
    required_bits: int
    configured_bits: int

    @property
    def escalated(self) -> bool:
        return self.required_bits > self.configured_bits


@dataclass(frozen=True)
class VerifyReport:
    checks: tuple[CheckResult, ...]
    escalations: tuple[EscalationRecord, ...]
    notes: tuple[tuple[str, str], ...]

    @property
    def all_passed(self) -> bool:
        return all(check.passed for check in self.checks)


def _strictly_decreasing(values: Sequence) -> bool:
    return all(a > b for a, b in zip(values, values[1:]))


def run_verify(config: RunConfig) -> VerifyReport:
    digits = output_digits(config.precision_bits)
    pinned = LimitLawContext(PINNED_BITS)
    config_ctx = LimitLawContext(config.precision_bits)
    checks: list[CheckResult] = []
    notes: list[tuple[str, str]] = []

    def fmt(value) -> str:
        return format_real(value, digits)

    def fmt_seq(values) -> str:
        return " > ".join(format_real(v, 6) for v in values)

    def add(name: str, passed, measured: str, tolerance: str) -> None:
        checks.append(CheckResult(name, bool(passed), measured, tolerance))

    needed = sorted({2, *KS_SWEEP, *config.n_list})
    measures = {n: load_or_compute(n, config.eps, config.cache_dir) for n in needed}

    # --- Eulerian polynomial suite -------------------------------------
    failing = next((m for m in range(41) if not series_identity_check(m)), None)
    add(
        "eulerian_series_identity",
        failing is None,
        "exact for all m <= 40" if failing is None else f"first failure at m={failing}",
        "exact equality",
    )

    mass_ok = all(
        sum(SHARED_TABLE.row(m)) == 2**m * math.factorial(m) for m in range(41)
    )
    add(
        "eulerian_total_mass",
        mass_ok,
        "sum of row m equals 2^m m! for m <= 40" if mass_ok else "mismatch",
        "exact equality",
    )

    bracket_ok = True
    margin = None
    for m, x in ((6, Fraction(1, 3)), (11, Fraction(2, 3))):
        partial = s_m_partial(m, x, 25)
        extended = s_m_partial(m, x, 260)
        bound = certified_tail_bound(m, x, 25)
        bracket_ok &= partial <= extended <= partial + bound
        gap = (partial + bound) - extended
        margin = gap if margin is None else min(margin, gap)
    add(
        "eulerian_tail_bracket",
        bracket_ok,
        f"worst slack {fmt(margin)}",
        "partial <= extension <= partial + certified tail",
    )

    # --- Polynomial family suite ---------------------------------------
    degrees_ok = all(build_xi(n).xi_tilde.degree == n - 1 for n in config.n_list)
    add(
        "xi_structure",
        degrees_ok,
        f"half-degree polynomial has degree n-1 for n in {list(config.n_list)}",
        "exact construction invariants",
    )

    closed_form = ExactPolynomial((Fraction(5, 96), Fraction(-1, 16)))
    add(
        "xi_tilde_2_closed_form",
        build_xi(2).xi_tilde == closed_form,
        "coefficients (5/96, -1/16)",
        "exact equality",
    )

    worst_dev = mpmath.mpf(0)
    with mpmath.workprec(PINNED_BITS + 64):
        for n in IDENTITY_DEGREES:
            for point in IDENTITY_POINTS:
                direct = log_derivative_direct(n, point)
                formula = log_derivative_formula(n, point, precision_bits=PINNED_BITS)
                worst_dev = max(worst_dev, abs(mpmath.mpmathify(direct) - formula))
    add(
        "xi_log_derivative_identity",
        worst_dev < mpmath.mpf("1e-30"),
        f"max |direct - formula| = {fmt(worst_dev)} over n in 2..20, five points",
        "< 1e-30 at 128-bit",
    )

    serial_ok = xi_from_text(xi_to_text(build_xi(5))) == build_xi(5)
    add("xi_serialization_roundtrip", serial_ok, "n=5 family member", "exact roundtrip")

    # --- Root isolation suite ------------------------------------------
    counts_ok = all(
        sturm_count(build_xi(n).xi_tilde, 0, 1) == n - 1 for n in config.n_list
    )
    add(
        "zero_count_matches_degree",
        counts_ok,
        f"n-1 roots in (0, 1) for n in {list(config.n_list)}",
        "exact count",
    )

    squarefree_ok = all(
        sturm_chain(build_xi(n).xi_tilde).is_squarefree for n in config.n_list
    )
    add(
        "zero_gcd_is_constant",
        squarefree_ok,
        "gcd with derivative has degree 0 for every configured n",
        "exact degree",
    )

    worst_radius = max(max(measures[n].radii) for n in config.n_list)
    add(
        "zero_certificates",
        worst_radius <= config.eps,
        f"largest certified radius {fmt(worst_radius)}",
        f"<= eps = {fmt(config.eps)}",
    )

    text = measure_to_text(measures[2], config.eps)
    loaded_n, loaded_eps, loaded = measure_from_text(text)
    add(
        "cache_text_roundtrip",
        loaded == measures[2] and loaded_n == 2 and loaded_eps == config.eps,
        "n=2 measure",
        "exact roundtrip",
    )

    try:
        verify_cached_measure(loaded, config.eps)
        recert_ok, recert_msg = True, "each root re-certified by one Sturm count of 1"
    except Exception as exc:  # noqa: BLE001 - report any failure verbatim
        recert_ok, recert_msg = False, str(exc)
    add("cache_recertification", recert_ok, recert_msg, "count 1 in [root-eps, root+eps]")

    # --- Limit-law suite (tolerances pinned at 128-bit) ----------------
    mass_sub = density_normalization_substituted(pinned)
    with mpmath.workprec(PINNED_BITS + 32):
        dev_sub = abs(mass_sub - 1)
    add(
        "limit_density_normalization_substituted",
        dev_sub < mpmath.mpf("1e-10"),
        f"|mass - 1| = {fmt(dev_sub)}",
        "< 1e-10",
    )

    mass_bulk = density_normalization_bulk(pinned)
    with mpmath.workprec(PINNED_BITS + 32):
        dev_bulk = abs(mass_bulk - 1)
    add(
        "limit_density_normalization_bulk",
        dev_bulk < mpmath.mpf("1e-10"),
        f"|mass - 1| = {fmt(dev_bulk)}",
        "< 1e-10",
    )

    step = Fraction(1, 10**8)
    worst_rel = mpmath.mpf(0)
    with mpmath.workprec(PINNED_BITS + 32):
        for i in range(1, 100):
            x = Fraction(i, 100)
            slope = (cdf(x + step, pinned) - cdf(x - step, pinned)) / mpmath.mpmathify(2 * step)
            rho = density(x, pinned)
            worst_rel = max(worst_rel, abs(slope - rho) / rho)
    add(
        "limit_cdf_derivative_matches_density",
        worst_rel < mpmath.mpf("1e-6"),
        f"max relative gap {fmt(worst_rel)} on the 99-point grid",
        "< 1e-6 relative at step 1e-8",
    )

    roundtrip_ps = [Fraction(i, 10) for i in range(1, 10)] + [Fraction(99, 100)]
    worst_pq = max(cdf_quantile_residual(p, pinned) for p in roundtrip_ps)
    add(
        "limit_cdf_quantile_roundtrip",
        worst_pq < mpmath.mpf("1e-20"),
        f"max |cdf(quantile(p)) - p| = {fmt(worst_pq)}",
        "< 1e-20 at 128-bit",
    )

    worst_qc = max(quantile_cdf_residual(Fraction(i, 10), pinned) for i in range(1, 10))
    add(
        "limit_quantile_cdf_roundtrip",
        worst_qc < mpmath.mpf("1e-20"),
        f"max |quantile(cdf(x)) - x| = {fmt(worst_qc)}",
        "< 1e-20 at 128-bit",
    )

    p_small = Fraction(1, 10**8)
    with mpmath.workprec(PINNED_BITS + 32):
        scale_limit = mpmath.pi**4 / 16
        small_ratio = quantile(p_small, pinned) / mpmath.mpmathify(p_small) ** 2
        dev_small_p = abs(small_ratio / scale_limit - 1)
    add(
        "limit_quantile_small_p_scaling",
        dev_small_p < mpmath.mpf("1e-10"),
        f"|quantile(p)/p^2 / (pi^4/16) - 1| = {fmt(dev_small_p)} at p = 1e-8",
        "< 1e-10",
    )

    x_small = Fraction(1, 10**8)
    with mpmath.workprec(PINNED_BITS + 32):
        asym = 2 / (mpmath.pi**2 * mpmath.sqrt(mpmath.mpmathify(x_small)))
        dev_small_x = abs(density(x_small, pinned) / asym - 1)
    add(
        "limit_density_small_x",
        dev_small_x < mpmath.mpf("0.01"),
        f"relative gap to 2/(pi^2 sqrt(x)) is {fmt(dev_small_x)} at x = 1e-8",
        "< 1% at x = 1e-8",
    )

    try:
        density(Fraction(3, 2), pinned)
        extension_ok = False
    except ValueError:
        extension_ok = (
            density(Fraction(3, 2), pinned, extend=True) == 0
            and density(Fraction(-1, 2), pinned, extend=True) == 0
        )
    add(
        "limit_density_zero_extension",
        extension_ok,
        "rejects x outside (0,1); extends by 0 on request",
        "exact contract",
    )

    # --- Stieltjes suite ------------------------------------------------
    sample_zs = (
        ("2", mpmath.mpf(2)),
        ("-1", mpmath.mpf(-1)),
        ("1/2+i/2", mpmath.mpc(0.5, 0.5)),
        ("i", mpmath.mpc(0, 1)),
    )
    quad_values = {label: stieltjes_quadrature(z, pinned) for label, z in sample_zs}
    with mpmath.workprec(PINNED_BITS + 32):
        worst_quad = max(
            abs(stieltjes_limit(z, pinned) - quad_values[label]) for label, z in sample_zs
        )
    add(
        "stieltjes_limit_matches_quadrature",
        worst_quad < mpmath.mpf("1e-8"),
        f"max |formula - quadrature| = {fmt(worst_quad)} over four sample z",
        "< 1e-8",
    )

    with mpmath.workprec(PINNED_BITS + 32):
        d_full = abs(stieltjes_limit(mpmath.mpf(2), pinned) - quad_values["2"])
        d_half = abs(stieltjes_limit_halved_variant(mpmath.mpf(2), pinned) - quad_values["2"])
    add(
        "stieltjes_first_term_variant",
        d_full < mpmath.mpf("1e-8") and d_half > mpmath.mpf("0.1"),
        f"coefficient 1 deviates {fmt(d_full)}; coefficient 1/2 deviates {fmt(d_half)}",
        "full variant < 1e-8, halved variant > 0.1",
    )
    notes.append(
        (
            "stieltjes_first_term",
            "The transform's first term 1/(sqrt(z)(1+sqrt(z))) carries coefficient 1: "
            f"at z=2 it matches the quadrature oracle to {format_real(d_full, 3)}, while the "
            f"halved-coefficient variant misses by {format_real(d_half, 3)} and also breaks "
            "the z*s(z) -> 1 decay. The halved variant is rejected.",
        )
    )

    with mpmath.workprec(PINNED_BITS + 32):
        big = mpmath.mpf(10) ** 6
        decay = abs(big * stieltjes_limit(big, pinned) - 1)
    add(
        "stieltjes_large_z_decay",
        decay < mpmath.mpf("0.01"),
        f"|z*s(z) - 1| = {fmt(decay)} at z = 1e6",
        "< 1e-2",
    )

    with mpmath.workprec(PINNED_BITS + 32):
        herglotz_worst = max(
            stieltjes_limit(mpmath.mpc(re, im), pinned).imag
            for re in (mpmath.mpf(-1), mpmath.mpf(0.25), mpmath.mpf(0.5), mpmath.mpf(1.5))
            for im in (mpmath.mpf(0.1), mpmath.mpf(1))
        )
    add(
        "stieltjes_herglotz_sign",
        herglotz_worst < 0,
        f"max Im s(z) = {fmt(herglotz_worst)} over the upper-half-plane grid",
        "< 0",
    )

    quarter = Fraction(1, 4)
    with mpmath.workprec(PINNED_BITS + 32):
        rho_quarter = density(quarter, pinned)
        inv_errs = [
            abs(inversion_density(quarter, Fraction(1, 10**k), pinned) - rho_quarter) / rho_quarter
            for k in (3, 4, 5)
        ]
    add(
        "stieltjes_inversion_converges",
        _strictly_decreasing(inv_errs),
        fmt_seq(inv_errs),
        "strictly decreasing over eps = 1e-3, 1e-4, 1e-5",
    )

    with mpmath.workprec(PINNED_BITS + 32):
        rel_quarter = (
            abs(inversion_density(quarter, Fraction(1, 10**6), pinned) - rho_quarter) / rho_quarter
        )
        x99 = Fraction(99, 100)
        rho99 = density(x99, pinned)
        rel99 = abs(inversion_density(x99, Fraction(1, 10**8), pinned) - rho99) / rho99
    add(
        "stieltjes_inversion_accuracy",
        rel_quarter < mpmath.mpf("1e-3") and rel99 < mpmath.mpf("1e-2"),
        f"relative error {fmt(rel_quarter)} at (1/4, 1e-6); {fmt(rel99)} at (0.99, 1e-8)",
        "< 1e-3 and < 1e-2 relative",
    )

    coeff_diffs = []
    for n in (2, 64):
        empirical = stieltjes_empirical(n, Fraction(2), pinned, measures[n])
        direct = log_derivative_direct(n, Fraction(2)) / (n - 1)
        coeff_diffs.append(abs(empirical - direct))
    worst_coeff = max(coeff_diffs)
    add(
        "stieltjes_empirical_matches_coefficients",
        worst_coeff < Fraction(1, 10**25),
        f"max |measure route - coefficient route| = {fmt(worst_coeff)} at z=2, n in (2, 64)",
        "< 1e-25 (root-certificate error budget)",
    )

    with mpmath.workprec(PINNED_BITS + 32):
        emp64 = mpmath.mpmathify(stieltjes_empirical(64, Fraction(2), pinned, measures[64]))
        conv_gap = abs(emp64 - stieltjes_limit(mpmath.mpf(2), pinned))
    add(
        "stieltjes_empirical_convergence",
        conv_gap < mpmath.mpf("0.05"),
        f"|s_64(2) - s(2)| = {fmt(conv_gap)}",
        "< 0.05",
    )

    # --- Ratio-limit suite ----------------------------------------------
    s_values = {m: s_ratio(m, RATIONAL_INV_E) for m in RATIO_SWEEP}
    s_errs = [abs(s_values[m] - 2) for m in RATIO_SWEEP]
    add(
        "ratio_s_error_at_400",
        s_errs[-1] < Fraction(1, 100),
        f"|ratio - 2| = {fmt(s_errs[-1])} at m=400, x ~ 1/e",
        "< 0.01",
    )
    add(
        "ratio_s_error_decreasing",
        _strictly_decreasing(s_errs),
        fmt_seq(s_errs),
        "strictly decreasing over m = 50, 100, 200, 400",
    )

    half = Fraction(1, 2)
    with mpmath.workprec(PINNED_BITS + 32):
        target_half = 2 / mpmath.log(2)
        rel_half = abs(mpmath.mpmathify(s_ratio(400, half)) - target_half) / target_half
    add(
        "ratio_s_half_anchor",
        rel_half < mpmath.mpf("0.01"),
        f"relative gap to 2/log 2 is {fmt(rel_half)} at m=400, x=1/2",
        "< 1% relative",
    )

    b_values = {m: b_ratio(m, RATIONAL_INV_E) for m in RATIO_SWEEP}
    with mpmath.workprec(PINNED_BITS + 32):
        xe = mpmath.mpmathify(RATIONAL_INV_E)
        b_target = 2 * (1 - xe) / (-mpmath.log(xe))
        b_errs = [abs(mpmath.mpmathify(b_values[m]) - b_target) for m in RATIO_SWEEP]
    add(
        "ratio_b_error_at_400",
        b_errs[-1] < mpmath.mpf("0.015"),
        f"|ratio - 2(1-x)/(-log x)| = {fmt(b_errs[-1])} at m=400, x ~ 1/e",
        "< 0.015",
    )
    add(
        "ratio_b_error_decreasing",
        _strictly_decreasing(b_errs),
        fmt_seq(b_errs),
        "strictly decreasing over m = 50, 100, 200, 400",
    )

    with mpmath.workprec(PINNED_BITS + 32):
        target_b_half = 1 / mpmath.log(2)
        rel_b_half = abs(mpmath.mpmathify(b_ratio(200, half)) - target_b_half) / target_b_half
    add(
        "ratio_b_half_anchor",
        rel_b_half < mpmath.mpf("0.02"),
        f"relative gap to 1/log 2 is {fmt(rel_b_half)} at m=200, x=1/2",
        "< 2% relative",
    )

    identity_ok = True
    identity_margin = None
    for m, x in ((30, Fraction(1, 3)), (57, Fraction(2, 3))):
        lo, hi = s_ratio_interval(m, x)
        b_val = b_ratio(m, x)
        identity_ok &= (1 - x) * lo <= b_val <= (1 - x) * hi
        slack = min(b_val - (1 - x) * lo, (1 - x) * hi - b_val)
        identity_margin = slack if identity_margin is None else min(identity_margin, slack)
    add(
        "ratio_series_identity",
        identity_ok,
        f"b-ratio inside (1-x) * certified s-ratio interval, slack {fmt(identity_margin)}",
        "exact interval containment",
    )

    # --- Distribution-convergence suite ----------------------------------
    ks_values = [ks_distance(n, pinned, config.eps, measure=measures[n]) for n in KS_SWEEP]
    ks2 = ks_distance(2, pinned, config.eps, measure=measures[2])
    with mpmath.workprec(PINNED_BITS + 32):
        ks2_gap = abs(ks2 - mpmath.mpf(KS_N2_ANCHOR))
    add(
        "ks_n2_anchor",
        ks2_gap < mpmath.mpf("1e-12"),
        f"|KS(2) - {KS_N2_ANCHOR[:9]}| = {fmt(ks2_gap)}",
        "< 1e-12 against the frozen anchor",
    )
    add(
        "ks_strictly_decreasing",
        _strictly_decreasing(ks_values),
        fmt_seq(ks_values),
        "strictly decreasing over n = 8, 16, 32, 64",
    )
    add(
        "ks_halving",
        ks_values[-1] < ks_values[0] / 2,
        f"KS(64) = {fmt(ks_values[-1])} vs KS(8)/2 = {fmt(ks_values[0] / 2)}",
        "KS(64) < KS(8)/2",
    )

    # --- Edge-scaling suite ----------------------------------------------
    with mpmath.workprec(PINNED_BITS + 32):
        quarter_pi = mpmath.pi**4 / 16
        left_devs = [
            abs(mpmath.mpmathify(left_edge_scaling(n, 1, config.eps, measure=measures[n])) / quarter_pi - 1)
            for n in EDGE_SWEEP
        ]
    add(
        "left_edge_deviation_decreasing",
        _strictly_decreasing(left_devs),
        fmt_seq(left_devs),
        "strictly decreasing over n = 16, 32, 64",
    )

    left64 = left_edge_scaling(64, 1, config.eps, measure=measures[64])
    add(
        "left_edge_window_n64",
        3 < left64 < 12,
        f"x_1 * n^2 = {fmt(left64)} at n=64",
        "inside (3, 12)",
    )

    left64_k2 = left_edge_scaling(64, 2, config.eps, measure=measures[64])
    k_ratio = left64_k2 / left64
    add(
        "left_edge_k2_consistency",
        Fraction(1, 2) < k_ratio < 2,
        f"k=2 statistic over k=1 statistic is {fmt(k_ratio)} at n=64",
        "inside (1/2, 2)",
    )

    right_values = [
        right_edge_scaling(n, config_ctx, config.eps, measure=measures[n]) for n in EDGE_SWEEP
    ]
    window_ok = all(mpmath.mpf("0.5") < v < mpmath.mpf("1.5") for v in right_values)
    add(
        "right_edge_window",
        window_ok,
        "values " + ", ".join(format_real(v, 6) for v in right_values) + " for n = 16, 32, 64",
        "each inside (0.5, 1.5)",
    )

    right2 = right_edge_scaling(2, pinned, config.eps, measure=measures[2])
    with mpmath.workprec(PINNED_BITS + 32):
        right2_gap = abs(right2 - mpmath.mpf(RIGHT_EDGE_N2_ANCHOR))
    add(
        "right_edge_n2_anchor",
        right2_gap < mpmath.mpf("1e-12"),
        f"|L(x_top)/(2n) - {RIGHT_EDGE_N2_ANCHOR[:9]}| = {fmt(right2_gap)} at n=2",
        "< 1e-12 against the frozen anchor",
    )

    tops = [measures[n].roots[-1] for n in KS_SWEEP]
    add(
        "right_edge_top_root_increasing",
        all(a < b for a, b in zip(tops, tops[1:])),
        "largest root increases with n over 8, 16, 32, 64",
        "strict increase",
    )

    escalations = tuple(
        EscalationRecord(n, right_edge_required_bits(measures[n]), config.precision_bits)
        for n in KS_SWEEP
    )
    return VerifyReport(tuple(checks), escalations, tuple(notes))


def report_to_json(report: VerifyReport) -> str:
    payload = {
        "all_passed": report.all_passed,
        "checks": [
            {
                "name": c.name,
                "passed": c.passed,
                "measured": c.measured,
                "tolerance": c.tolerance,
            }
            for c in report.checks
        ],
        "adaptive_precision": [
            {
                "n": e.n,
                "required_bits": e.required_bits,
                "configured_bits": e.configured_bits,
                "escalated": e.escalated,
            }
            for e in report.escalations
        ],
        "notes": dict(report.notes),
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def report_lines(report: VerifyReport) -> list[str]:
    lines = [
        f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.measured} [tolerance: {c.tolerance}]"
        for c in report.checks
    ]
    for e in report.escalations:
        state = "escalated" if e.escalated else "within configured precision"
        lines.append(
            f"PRECISION n={e.n}: requires {e.required_bits} bits, configured {e.configured_bits} ({state})"
        )
    for key, text in report.notes:
        lines.append(f"NOTE {key}: {text}")
    lines.append("VERIFY PASS" if report.all_passed else "VERIFY FAIL")
    return lines
