"""The limiting zero distribution: density, CDF, quantile, Stieltjes transform.

The law lives on (0, 1) with density

    rho(x) = 2 / (sqrt(x) * (1 - x) * (L(x)^2 + pi^2)),
    L(x)   = log((1 + sqrt(x)) / (1 - sqrt(x))),

CDF F(x) = (2/pi) * atan(L(x)/pi), and quantile tanh((pi/2)*tan(pi*p/2))^2.
Under x = tanh(v)^2 the measure is the Cauchy-type law 2 dL/(L^2 + pi^2)
with L = 2v, which is how every near-edge computation here is stabilized.

Numerical policy: real inputs are ingested as exact rationals, and 1 - x is
always formed in exact arithmetic before any rounding.  An mpf cannot hold
x = 1 - 10^-60 at 128 bits, but it holds 10^-60 effortlessly, so exactness
of the subtraction is the whole game near the right edge; everything after
that is ordinary floating point at a generous working precision.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath

from .errors import BranchCutError, PoleProximityError, PoleProximityWarning
from .zeros import EmpiricalMeasure, zero_measure

Real = Union[int, float, Fraction, mpmath.mpf]


@dataclass(frozen=True)
class LimitLawContext:
    """Evaluation context: working precision and branch convention.

    The branch convention is fixed: principal square root and logarithm,
    with the cut of the transform placed on [0, 1] and boundary values taken
    continuously from the upper half-plane, so Im sqrt(z) > 0 above the cut.
    Only this convention is implemented; the field exists so that a context
    carries its convention explicitly rather than by folklore.
    """

    precision_bits: int = 128
    branch: str = "principal"

    def __post_init__(self) -> None:
        if self.precision_bits < 64:
            raise ValueError("precision_bits must be at least 64")
        if self.branch != "principal":
            raise ValueError("only the principal branch convention is implemented")


DEFAULT_CONTEXT = LimitLawContext()


def _as_fraction(value: Real) -> Fraction:
    """Exact rational from int, float, Fraction, or mpf (all are dyadic)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, mpmath.mpf):
        sign, man, exp, _ = value._mpf_
        if man == 0 and exp != 0:
            raise ValueError("cannot convert a non-finite value to a rational")
        out = Fraction(man) * (Fraction(2) ** exp)
        return -out if sign else out
    raise TypeError(f"expected a real number, got {type(value).__name__}")


def _to_mpc(z) -> mpmath.mpc:
    """Complex ingestion at the current working precision, exact parts."""
    if isinstance(z, (complex, mpmath.mpc)):
        re, im = _as_fraction(z.real), _as_fraction(z.imag)
    else:
        re, im = _as_fraction(z), Fraction(0)
    return mpmath.mpc(mpmath.mpmathify(re), mpmath.mpmathify(im))


def _work_bits(ctx: LimitLawContext) -> int:
    return ctx.precision_bits + 32


def _density_from_parts(s: mpmath.mpf, omx: mpmath.mpf) -> mpmath.mpf:
    """Density value from sqrt(x) and 1-x given as already-trusted mpfs."""
    big_l = mpmath.log((1 + s) ** 2 / omx)
    return 2 / (s * omx * (big_l**2 + mpmath.pi**2))


def _edge_log_mpf(x: Fraction, omx: Fraction) -> mpmath.mpf:
    s = mpmath.sqrt(mpmath.mpmathify(x))
    return mpmath.log((1 + s) ** 2 / mpmath.mpmathify(omx))


def edge_log_coordinate(x: Real, ctx: LimitLawContext = DEFAULT_CONTEXT, min_bits: int = 0) -> mpmath.mpf:
    """L(x) = log((1+sqrt(x))/(1-sqrt(x))), stable arbitrarily close to 1.

    min_bits raises the working precision floor, for callers that know x
    carries more significant structure than the context default resolves.
    """
    xf = _as_fraction(x)
    if not 0 < xf < 1:
        raise ValueError("the edge coordinate needs 0 < x < 1")
    with mpmath.workprec(max(_work_bits(ctx), min_bits + 32)):
        return _edge_log_mpf(xf, 1 - xf)


def density(x: Real, ctx: LimitLawContext = DEFAULT_CONTEXT, *, extend: bool = False) -> mpmath.mpf:
    """Limit density at x; with extend=True, 0 outside (0, 1) instead of an error."""
    xf = _as_fraction(x)
    if not 0 < xf < 1:
        if extend:
            return mpmath.mpf(0)
        raise ValueError("density is supported on (0, 1); pass extend=True for the zero extension")
    omx = 1 - xf
    with mpmath.workprec(_work_bits(ctx)):
        s = mpmath.sqrt(mpmath.mpmathify(xf))
        return _density_from_parts(s, mpmath.mpmathify(omx))


def cdf(x: Real, ctx: LimitLawContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    """Limit CDF: 0 at or below 0, 1 at or above 1, arctan law between."""
    xf = _as_fraction(x)
    if xf <= 0:
        return mpmath.mpf(0)
    if xf >= 1:
        return mpmath.mpf(1)
    with mpmath.workprec(_work_bits(ctx)):
        big_l = _edge_log_mpf(xf, 1 - xf)
        return (2 / mpmath.pi) * mpmath.atan(big_l / mpmath.pi)


def quantile(p: Real, ctx: LimitLawContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    """Inverse CDF on (0, 1): tanh((pi/2)*tan(pi*p/2))^2.

    The value is correct to working precision, which near p = 1 means it
    rounds to exactly 1; callers needing the surviving distance to 1 should
    work in the edge-log coordinate instead of the raw quantile.
    """
    pf = _as_fraction(p)
    if not 0 < pf < 1:
        raise ValueError("quantile is defined on 0 < p < 1")
    with mpmath.workprec(_work_bits(ctx)):
        v = mpmath.pi / 2 * mpmath.tan(mpmath.pi * mpmath.mpmathify(pf) / 2)
        return mpmath.tanh(v) ** 2


def cdf_quantile_residual(p: Real, ctx: LimitLawContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    """|cdf(quantile(p)) - p| with the quantile held at escalated precision.

    The quantile approaches 1 like 1 - 4*exp(-2v) with v = (pi/2)tan(pi*p/2),
    so representing it to useful accuracy costs about 2v/log 2 extra bits.
    A 64-bit probe of v sizes the escalation; the roundtrip is then measured
    honestly, with the quantile materialized as a number and re-ingested.
    """
    pf = _as_fraction(p)
    if not 0 < pf < 1:
        raise ValueError("the roundtrip residual needs 0 < p < 1")
    with mpmath.workprec(64):
        v_probe = mpmath.pi / 2 * mpmath.tan(mpmath.pi * mpmath.mpmathify(pf) / 2)
        extra = max(0, int(2 * v_probe / mpmath.log(2)) + 64)
    escalated = LimitLawContext(ctx.precision_bits + extra, ctx.branch)
    x = quantile(pf, escalated)
    f = cdf(_as_fraction(x), ctx)
    with mpmath.workprec(_work_bits(ctx)):
        return abs(f - mpmath.mpmathify(pf))


def quantile_cdf_residual(x: Real, ctx: LimitLawContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    """|quantile(cdf(x)) - x|, the inverse roundtrip, at context precision."""
    xf = _as_fraction(x)
    if not 0 < xf < 1:
        raise ValueError("the roundtrip residual needs 0 < x < 1")
    p = cdf(xf, ctx)
    q = quantile(_as_fraction(p), ctx)
    with mpmath.workprec(_work_bits(ctx)):
        return abs(q - mpmath.mpmathify(xf))


def _cut_distance(zc: mpmath.mpc) -> mpmath.mpf:
    re, im = zc.real, zc.imag
    if re <= 0:
        return abs(zc)
    if re >= 1:
        return abs(zc - 1)
    return abs(im)


def _stieltjes_formula(zc: mpmath.mpc, first_term_halved: bool) -> mpmath.mpc:
    w = mpmath.sqrt(zc)
    u = (w - 1) / (w + 1)
    slack = mpmath.mpf(2) ** (-(mpmath.mp.prec // 4))
    if abs(u) > 1 + slack:
        raise BranchCutError(f"|u(z)| = {mpmath.nstr(abs(u), 8)} > 1: branch sanity check failed")
    first = 1 / (w * (1 + w))
    if first_term_halved:
        first = first / 2
    return first + (u + (1 - u) / mpmath.log(u)) / (w * (1 - u))


def stieltjes_limit(z, ctx: LimitLawContext = DEFAULT_CONTEXT) -> mpmath.mpc:
    """Stieltjes transform s(z) = int rho(x)/(z-x) dx of the limit law.

    Closed form under the principal branch, with u = (sqrt(z)-1)/(sqrt(z)+1):

        s(z) = 1/(sqrt(z)(1+sqrt(z))) + (u + (1-u)/log u) / (sqrt(z)(1-u))

    The first term carries coefficient 1: the halved variant fails both the
    large-z asymptotic z*s(z) -> 1 and the quadrature cross-check, and the
    verify suite documents that comparison.  On the negative real axis |u|
    reaches 1 exactly; the formula remains valid there as the continuous
    boundary value from the upper half-plane, e.g. s(-1) = -2/pi.
    """
    with mpmath.workprec(_work_bits(ctx)):
        zc = _to_mpc(z)
        if _cut_distance(zc) < mpmath.mpf(2) ** (-(ctx.precision_bits // 2)):
            raise BranchCutError(
                f"z = {mpmath.nstr(zc, 8)} is within 2^-{ctx.precision_bits // 2} of the cut [0, 1]"
            )
        return _stieltjes_formula(zc, first_term_halved=False)


def stieltjes_limit_halved_variant(z, ctx: LimitLawContext = DEFAULT_CONTEXT) -> mpmath.mpc:
    """The rejected variant with the first term halved; kept for the record.

    Exists so the verify suite can show, with numbers, that exactly one of
    the two candidate normalizations agrees with the quadrature oracle and
    the 1/z decay.  Never used for computation.
    """
    with mpmath.workprec(_work_bits(ctx)):
        zc = _to_mpc(z)
        if _cut_distance(zc) < mpmath.mpf(2) ** (-(ctx.precision_bits // 2)):
            raise BranchCutError("z is too close to the cut [0, 1]")
        return _stieltjes_formula(zc, first_term_halved=True)


def stieltjes_quadrature(z, ctx: LimitLawContext = DEFAULT_CONTEXT) -> mpmath.mpc:
    """Independent oracle for s(z): direct quadrature of rho(x)/(z-x).

    Integrates in the edge-log coordinate, where the law is exactly
    2 dL/(L^2 + pi^2) on (0, inf) and x = tanh(L/2)^2.  The range is cut at
    L = 60; past it x is within 4e-27 of 1, so the remaining mass gets the
    constant kernel 1/(z-1) and contributes (2/pi)*atan(pi/60)/(z-1), with
    error far below the 1e-8 comparisons this oracle backs.
    """
    with mpmath.workprec(_work_bits(ctx)):
        zc = _to_mpc(z)
        if _cut_distance(zc) < mpmath.mpf(2) ** (-(ctx.precision_bits // 2)):
            raise BranchCutError("z is too close to the cut [0, 1]")
        pi = mpmath.pi

        def integrand(big_l: mpmath.mpf) -> mpmath.mpc:
            x = mpmath.tanh(big_l / 2) ** 2
            return (2 / (big_l**2 + pi**2)) / (zc - x)

        main = mpmath.quad(integrand, [0, 2, 8, 24, 60])
        tail = (2 / pi) * mpmath.atan(pi / 60) / (zc - 1)
        return main + tail


def stieltjes_empirical(n: int, z, ctx: LimitLawContext = DEFAULT_CONTEXT, measure: EmpiricalMeasure | None = None):
    """Stieltjes transform of the empirical root measure: mean of 1/(z - x_k).

    For real rational z the sum is computed exactly and returned as a
    Fraction; complex z gets a floating sum at working precision.  Proximity
    to an atom (within max(1e-6, 4 * certified radius)) is flagged with
    PoleProximityWarning and the value still returned; landing exactly on an
    atom raises PoleProximityError.
    """
    if measure is None:
        measure = zero_measure(n)
    elif measure.n != n:
        raise ValueError(f"measure is for n={measure.n}, not n={n}")

    def near_threshold(radius: Fraction) -> Fraction:
        return max(Fraction(1, 10**6), 4 * radius)

    if isinstance(z, (complex, mpmath.mpc)) and _as_fraction(z.imag) != 0:
        with mpmath.workprec(_work_bits(ctx)):
            zc = _to_mpc(z)
            terms = []
            for root, radius in zip(measure.roots, measure.radii):
                dz = zc - mpmath.mpmathify(root)
                if abs(dz) <= mpmath.mpmathify(near_threshold(radius)):
                    warnings.warn(
                        f"z is within {float(near_threshold(radius)):.1e} of the root near {float(root):.6f}",
                        PoleProximityWarning,
                        stacklevel=2,
                    )
                terms.append(1 / dz)
            return mpmath.fsum(terms) / (n - 1)

    zf = _as_fraction(z.real if isinstance(z, (complex, mpmath.mpc)) else z)
    total = Fraction(0)
    for root, radius in zip(measure.roots, measure.radii):
        dz = zf - root
        if dz == 0:
            raise PoleProximityError(f"z coincides with the root at {root}")
        if abs(dz) <= near_threshold(radius):
            warnings.warn(
                f"z is within {float(near_threshold(radius)):.1e} of the root near {float(root):.6f};"
                " the value is pole-dominated",
                PoleProximityWarning,
                stacklevel=2,
            )
        total += 1 / dz
    return total / (n - 1)


def inversion_density(x: Real, eps: Real, ctx: LimitLawContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    """Density recovered from the transform: -Im s(x + i*eps) / pi.

    Converges to density(x) as eps -> 0; eps itself is the offset from the
    cut, so the cut guard inside stieltjes_limit prices how small it may be.
    """
    xf = _as_fraction(x)
    if not 0 < xf < 1:
        raise ValueError("inversion targets the open interval (0, 1)")
    epsf = _as_fraction(eps)
    if epsf <= 0:
        raise ValueError("eps must be positive")
    with mpmath.workprec(_work_bits(ctx)):
        z = mpmath.mpc(mpmath.mpmathify(xf), mpmath.mpmathify(epsf))
        value = stieltjes_limit(z, ctx)
        return -value.imag / mpmath.pi


def density_normalization_substituted(ctx: LimitLawContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    """Total mass via the quantile substitution x = tanh(v)^2, v = (pi/2)tan(pi p/2).

    The integrand rho(x(p)) * x'(p) is identically 1 in exact arithmetic;
    here it is assembled from separately computed floating factors, so the
    quadrature result measures how well the implemented density, viewed
    through the substitution, actually carries unit mass.
    """
    with mpmath.workprec(_work_bits(ctx)):
        pi = mpmath.pi

        def integrand(p: mpmath.mpf) -> mpmath.mpf:
            half_angle = pi * p / 2
            t = mpmath.tan(half_angle)
            v = pi / 2 * t
            s = mpmath.tanh(v)
            omx = mpmath.sech(v) ** 2
            slope = 2 * s * omx * (pi**2 / 4) * (1 + t**2)
            return _density_from_parts(s, omx) * slope

        return mpmath.quad(integrand, [0, mpmath.mpf(1) / 2, 1])


def density_normalization_bulk(
    ctx: LimitLawContext = DEFAULT_CONTEXT, delta: Fraction = Fraction(1, 10**12)
) -> mpmath.mpf:
    """Total mass via direct quadrature on [delta, 1-delta] plus exact tails.

    Independent of the quantile: the bulk is integrated in two legs chosen
    to tame the endpoint singularities (u = sqrt(x) near 0, the edge-log
    coordinate near 1), and the two tail masses are added in closed form.
    At delta = 1e-12 the right tail still holds about 7 percent of the mass,
    which only the edge-log form can see; raw quadrature in x cannot cross
    into it because 1 - x is numerically indistinguishable from 0 there.
    """
    delta = Fraction(delta)
    if not 0 < delta < Fraction(1, 100):
        raise ValueError("delta must sit in (0, 1/100)")
    with mpmath.workprec(_work_bits(ctx)):
        pi = mpmath.pi
        d = mpmath.mpmathify(delta)

        def integrand_u(u: mpmath.mpf) -> mpmath.mpf:
            return _density_from_parts(u, (1 - u) * (1 + u)) * 2 * u

        def integrand_l(big_l: mpmath.mpf) -> mpmath.mpf:
            s = mpmath.tanh(big_l / 2)
            omx = mpmath.sech(big_l / 2) ** 2
            return _density_from_parts(s, omx) * s * omx

        u_leg = mpmath.quad(integrand_u, [mpmath.sqrt(d), mpmath.mpf(1) / 2])
        l_split = _edge_log_mpf(Fraction(1, 4), Fraction(3, 4))
        l_top = _edge_log_mpf(1 - delta, delta)
        mid_leg = mpmath.quad(integrand_l, [l_split, 6, 15, l_top])
        left_tail = (2 / pi) * mpmath.atan(_edge_log_mpf(delta, 1 - delta) / pi)
        right_tail = (2 / pi) * mpmath.atan(pi / l_top)
        return left_tail + u_leg + mid_leg + right_tail
