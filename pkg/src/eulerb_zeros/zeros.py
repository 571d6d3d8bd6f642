"""Certified real-root isolation and refinement on (0, 1).

Everything here is exact: Sturm chains are primitive integer remainder
sequences, interval endpoints are rationals, and bisection decides sides by
integer sign evaluations.  A returned interval therefore carries a proof
that it contains exactly one simple root, and a refined midpoint carries a
proof-backed radius.

Root measures are canonicalized to decimal midpoints before they are handed
out or written to disk.  The decimal rounding is far below the certified
radius, so correctness is unaffected, and it buys reproducibility: the same
measure is bit-identical whether it was computed fresh or loaded from a
cache file, which in turn makes every downstream CSV byte-stable.
"""

from __future__ import annotations

import os
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Sequence

from .errors import CacheFormatError, NonSquarefreeError
from .polynomial import (
    ExactPolynomial,
    int_derivative,
    int_eval_scaled,
    sturm_remainder_chain,
)
from .textio import (
    atomic_write_text,
    format_eps_token,
    format_unit_decimal,
    parse_eps_token,
    parse_unit_decimal,
)
from .xi_family import build_xi

DEFAULT_EPS = Fraction(1, 10**30)

# Refinement tightens each root until its radius is this many binary orders
# below the distance to the nearer edge of (0, 1), so edge statistics that
# divide by x or 1 - x stay meaningful without any caller-side retry loop.
EDGE_SHIFT = 16

_ROOTS_HEADER = "roots v1"


def _sign(value: int) -> int:
    return (value > 0) - (value < 0)


class SturmChain:
    """Sign-variation oracle for one squarefree-or-not polynomial."""

    __slots__ = ("rows",)

    def __init__(self, poly: ExactPolynomial) -> None:
        if not poly:
            raise ValueError("zero polynomial has no Sturm chain")
        ints = poly.primitive_int_coeffs()
        if len(ints) == 1:
            self.rows: tuple[tuple[int, ...], ...] = (ints,)
        else:
            self.rows = tuple(sturm_remainder_chain(ints, int_derivative(ints)))

    @property
    def is_squarefree(self) -> bool:
        return len(self.rows[-1]) == 1

    @property
    def gcd_degree(self) -> int:
        return len(self.rows[-1]) - 1

    def sign_at(self, point: Fraction) -> int:
        return _sign(int_eval_scaled(self.rows[0], point.numerator, point.denominator))

    def variations_at(self, point: Fraction) -> int:
        num, den = point.numerator, point.denominator
        count = 0
        prev = 0
        for row in self.rows:
            sign = _sign(int_eval_scaled(row, num, den))
            if sign == 0:
                continue
            if prev != 0 and sign != prev:
                count += 1
            prev = sign
        return count

    def count(self, lo: Fraction, hi: Fraction) -> int:
        if not lo < hi:
            raise ValueError("interval endpoints must satisfy lo < hi")
        if self.sign_at(lo) == 0 or self.sign_at(hi) == 0:
            raise ValueError("polynomial vanishes at an interval endpoint; perturb it")
        return self.variations_at(lo) - self.variations_at(hi)


@lru_cache(maxsize=None)
def sturm_chain(poly: ExactPolynomial) -> SturmChain:
    return SturmChain(poly)


def sturm_count(poly: ExactPolynomial, lo, hi) -> int:
    """Exact number of distinct real roots of poly in (lo, hi]."""
    return sturm_chain(poly).count(Fraction(lo), Fraction(hi))


@dataclass(frozen=True)
class IsolatingInterval:
    """Rational interval certified to contain exactly one simple root."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if not (0 <= self.lo < self.hi <= 1):
            raise ValueError("isolating intervals live inside [0, 1]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def _split_points(lo: Fraction, hi: Fraction, max_roots: int) -> Iterator[Fraction]:
    # Midpoint first; on a root collision walk the deterministic sequence
    # 1/3, 2/5, 3/7, ... which offers more candidates than the polynomial
    # has roots, so one of them is always usable.
    width = hi - lo
    yield lo + width / 2
    for j in range(1, max_roots + 2):
        yield lo + width * Fraction(j, 2 * j + 1)


def isolate_roots(poly: ExactPolynomial) -> list[IsolatingInterval]:
    """Disjoint rational intervals in (0, 1), one per root, sorted ascending.

    Recursive bisection on Sturm variation counts; each split evaluates the
    chain at one new point.  Requires a squarefree polynomial (hard error
    otherwise) that does not vanish at 0 or 1.
    """
    chain = sturm_chain(poly)
    if not chain.is_squarefree:
        raise NonSquarefreeError(
            f"gcd with derivative has degree {chain.gcd_degree}; expected simple roots"
        )
    zero, one = Fraction(0), Fraction(1)
    if chain.sign_at(zero) == 0 or chain.sign_at(one) == 0:
        raise ValueError("polynomial vanishes at an endpoint of (0, 1)")
    degree = poly.degree
    found: list[IsolatingInterval] = []
    stack = [(zero, one, chain.variations_at(zero), chain.variations_at(one))]
    while stack:
        lo, hi, v_lo, v_hi = stack.pop()
        roots_here = v_lo - v_hi
        if roots_here == 0:
            continue
        if roots_here == 1:
            found.append(IsolatingInterval(lo, hi))
            continue
        for mid in _split_points(lo, hi, degree):
            if chain.sign_at(mid) != 0:
                break
        else:  # pragma: no cover - more candidates than roots exist
            raise ArithmeticError("all split candidates hit roots")
        v_mid = chain.variations_at(mid)
        stack.append((lo, mid, v_lo, v_mid))
        stack.append((mid, hi, v_mid, v_hi))
    found.sort(key=lambda iv: iv.lo)
    return found


def refine_root(poly: ExactPolynomial, interval: IsolatingInterval, eps) -> Fraction:
    """Midpoint within eps of the unique root, by exact sign bisection.

    Bisection narrows until the interval width is at most 2*eps; an exact
    hit on the root returns it outright.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    ints = poly.primitive_int_coeffs()

    def sign_at(point: Fraction) -> int:
        return _sign(int_eval_scaled(ints, point.numerator, point.denominator))

    lo, hi = interval.lo, interval.hi
    s_lo, s_hi = sign_at(lo), sign_at(hi)
    if s_lo == 0 or s_hi == 0:
        raise ValueError("interval endpoints must not be roots")
    if s_lo == s_hi:
        raise ValueError("interval does not bracket a sign change; not an isolating interval")
    while hi - lo > 2 * eps:
        mid = (lo + hi) / 2
        s_mid = sign_at(mid)
        if s_mid == 0:
            return mid
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


@dataclass(frozen=True)
class EmpiricalMeasure:
    """Uniform probability measure on the n-1 refined roots.

    Midpoints are exact rationals; radii are certified bounds on the distance
    to the true roots.  Certainty of the ordering requires the uncertainty
    intervals to be disjoint, which is validated here.
    """

    n: int
    roots: tuple[Fraction, ...]
    radii: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("a root measure needs n >= 2")
        if len(self.roots) != self.n - 1 or len(self.radii) != self.n - 1:
            raise ValueError(f"expected exactly {self.n - 1} roots with radii")
        for root, radius in zip(self.roots, self.radii):
            if radius <= 0:
                raise ValueError("radii must be positive")
            if not (0 < root - radius and root + radius < 1):
                raise ValueError("root uncertainty interval escapes (0, 1)")
        for (r0, rad0), (r1, rad1) in zip(
            zip(self.roots, self.radii), zip(self.roots[1:], self.radii[1:])
        ):
            if not r0 + rad0 < r1 - rad1:
                raise ValueError("root uncertainty intervals overlap or are unsorted")


def empirical_cdf(measure: EmpiricalMeasure, x) -> Fraction:
    """Right-continuous step function: share of roots at or below x."""
    return Fraction(bisect_right(measure.roots, Fraction(x)), measure.n - 1)


def _decimal_places_for(target: Fraction) -> int:
    # Minimal d with 10**-d <= target / 1000.  The published radius is
    # 1000 * 10**-d, so it lands in (target/10, target]: never above the
    # refinement target (hence never above eps), and wide enough that the
    # decimal rounding of the midpoint stays well inside the certificate.
    num, den = target.numerator, target.denominator
    places = 0
    power = 1
    while 1000 * den > num * power:
        power *= 10
        places += 1
    return places


def _refine_adaptive(
    chain_sign,
    interval: IsolatingInterval,
    eps: Fraction,
) -> tuple[Fraction, Fraction]:
    """Refine until width <= min(eps, lo >> EDGE_SHIFT, (1-hi) >> EDGE_SHIFT),
    then canonicalize the midpoint to the coarsest compliant decimal grid.

    Returns (canonical midpoint, certified radius).  The radius is a round
    power of ten in (target/10, target], so it never exceeds eps; bisection
    continues until the bracket fits inside it, which keeps the true root
    within the radius of the decimal midpoint.
    """
    lo, hi = interval.lo, interval.hi
    s_lo = chain_sign(lo)

    def bisect_until(width_goal) -> bool:
        nonlocal lo, hi
        while hi - lo > width_goal(lo, hi):
            mid = (lo + hi) / 2
            s_mid = chain_sign(mid)
            if s_mid == 0:
                lo = hi = mid
                return True
            if s_mid == s_lo:
                lo = mid
            else:
                hi = mid
        return False

    def primary_target(a: Fraction, b: Fraction) -> Fraction:
        if a > 0 and b < 1:
            return min(eps, a / (1 << EDGE_SHIFT), (1 - b) / (1 << EDGE_SHIFT))
        return (b - a) / 2  # force splits until both edges are interior

    exact_hit = bisect_until(primary_target)
    target = min(eps, lo / (1 << EDGE_SHIFT), (1 - hi) / (1 << EDGE_SHIFT))
    places = _decimal_places_for(target)
    radius = Fraction(1000, 10**places)  # in (target/10, target], by minimality of places
    if not exact_hit:
        bisect_until(lambda a, b: radius)
    mid = (lo + hi) / 2
    canonical = Fraction(round(mid * 10**places), 10**places)
    return canonical, radius


@lru_cache(maxsize=None)
def zero_measure(n: int, eps: Fraction = DEFAULT_EPS) -> EmpiricalMeasure:
    """Isolate, refine, canonicalize, and certify all roots for one n."""
    if n < 2:
        raise ValueError("a root measure needs n >= 2")
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    poly = build_xi(n).xi_tilde
    intervals = isolate_roots(poly)
    if len(intervals) != n - 1:
        raise ArithmeticError(
            f"expected {n - 1} simple roots in (0, 1), isolated {len(intervals)}"
        )
    chain = sturm_chain(poly)
    roots: list[Fraction] = []
    radii: list[Fraction] = []
    for interval in intervals:
        canonical, radius = _refine_adaptive(chain.sign_at, interval, eps)
        if chain.count(canonical - radius, canonical + radius) != 1:
            raise ArithmeticError("canonical midpoint lost its root certificate")
        roots.append(canonical)
        radii.append(radius)
    return EmpiricalMeasure(n=n, roots=tuple(roots), radii=tuple(radii))


# ---------------------------------------------------------------------------
# Versioned root cache: one file per (n, eps), append-only.


def measure_to_text(measure: EmpiricalMeasure, eps: Fraction) -> str:
    lines = [f"{_ROOTS_HEADER} n={measure.n} eps={format_eps_token(eps)}"]
    for root, radius in zip(measure.roots, measure.radii):
        places = len(str(radius.denominator)) - 1 + 3  # radius is 10**(3 - places)
        lines.append(format_unit_decimal(root, places))
    return "\n".join(lines) + "\n"


def measure_from_text(text: str) -> tuple[int, Fraction, EmpiricalMeasure]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise CacheFormatError("empty roots payload")
    header = lines[0].split()
    if header[:2] != _ROOTS_HEADER.split() or len(header) != 4:
        raise CacheFormatError(f"unsupported roots header: {lines[0]!r}")
    if not header[2].startswith("n=") or not header[3].startswith("eps="):
        raise CacheFormatError(f"unsupported roots header: {lines[0]!r}")
    n = int(header[2][2:])
    eps = parse_eps_token(header[3][4:])
    roots: list[Fraction] = []
    radii: list[Fraction] = []
    for ln in lines[1:]:
        value, places = parse_unit_decimal(ln)
        if places < 4:
            raise CacheFormatError(f"midpoint stored with too few places: {ln!r}")
        roots.append(value)
        radii.append(Fraction(1000, 10**places))
    try:
        measure = EmpiricalMeasure(n=n, roots=tuple(roots), radii=tuple(radii))
    except ValueError as exc:
        raise CacheFormatError(f"inconsistent roots payload: {exc}") from exc
    return n, eps, measure


def cache_path(cache_dir: Path, n: int, eps: Fraction) -> Path:
    token = format_eps_token(eps).replace("/", "d")
    return Path(cache_dir) / f"roots_n{n}_eps{token}.txt"


def verify_cached_measure(measure: EmpiricalMeasure, eps: Fraction) -> None:
    """Re-certify loaded roots: one Sturm count of 1 per root on [r-eps, r+eps]."""
    poly = build_xi(measure.n).xi_tilde
    chain = sturm_chain(poly)
    for root in measure.roots:
        if chain.count(root - eps, root + eps) != 1:
            raise CacheFormatError(f"cached root {root} failed its Sturm re-certification")


def save_measure(measure: EmpiricalMeasure, eps: Fraction, cache_dir: Path) -> Path:
    path = cache_path(cache_dir, measure.n, eps)
    if not path.exists():  # append-only: an existing certified file is never rewritten
        atomic_write_text(path, measure_to_text(measure, eps))
    return path


def load_measure(path: Path, n: int, eps: Fraction) -> EmpiricalMeasure:
    file_n, file_eps, measure = measure_from_text(Path(path).read_text(encoding="utf-8"))
    if file_n != n or file_eps != eps:
        raise CacheFormatError(
            f"cache file is for n={file_n}, eps={format_eps_token(file_eps)}; "
            f"requested n={n}, eps={format_eps_token(eps)}"
        )
    verify_cached_measure(measure, eps)
    return measure


def load_or_compute(n: int, eps: Fraction = DEFAULT_EPS, cache_dir: Path | None = None) -> EmpiricalMeasure:
    """Measure for (n, eps), from the cache when present, persisted when not.

    A version or integrity mismatch in an existing file is a hard error,
    never a silent recompute: the file is evidence of a previous run and the
    caller should decide its fate.
    """
    eps = Fraction(eps)
    if cache_dir is None:
        return zero_measure(n, eps)
    path = cache_path(cache_dir, n, eps)
    if path.exists():
        return load_measure(path, n, eps)
    measure = zero_measure(n, eps)
    save_measure(measure, eps, cache_dir)
    return measure
