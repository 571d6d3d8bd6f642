"""Type-B Eulerian polynomials and the odd-weight power series they encode.

Rows are built bottom-up from the first-order recurrence

    B_m(z) = ((2m - 1) z + 1) B_{m-1}(z) + 2 z (1 - z) B_{m-1}'(z),   B_0 = 1,

entirely in integer arithmetic.  The recurrence's index convention is pinned
by an independent oracle rather than trusted: `series_identity_check`
re-derives each row from the generating identity

    B_m(x) = (1 - x)^{m+1} * sum_{k >= 0} (2k + 1)^m x^k

truncated at order m, using nothing but binomial coefficients and integer
powers.  Partial sums of the series itself, and certified bounds for their
truncation tails, are what the ratio-limit experiments consume.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb

from .polynomial import ExactPolynomial


def _next_row(row: tuple[int, ...], m: int) -> tuple[int, ...]:
    # ((2m - 1) z + 1) * B + 2 z (1 - z) * B', all integer adds into one pass
    out = [0] * (m + 1)
    for k, c in enumerate(row):
        out[k] += c
        out[k + 1] += (2 * m - 1) * c
    for k in range(1, len(row)):
        d = k * row[k]
        out[k] += 2 * d
        out[k + 1] -= 2 * d
    return tuple(out)


class EulerianBTable:
    """Grow-only cache of integer coefficient rows B_0, B_1, ..., B_max_m.

    Extension is single-writer under a lock; completed rows are immutable
    tuples, so concurrent readers never need coordination.
    """

    def __init__(self) -> None:
        self._rows: list[tuple[int, ...]] = [(1,)]
        self._lock = threading.Lock()

    @property
    def max_m(self) -> int:
        return len(self._rows) - 1

    def row(self, m: int) -> tuple[int, ...]:
        if m < 0:
            raise ValueError("row index must be non-negative")
        if m > self.max_m:
            with self._lock:
                while len(self._rows) <= m:
                    self._rows.append(_next_row(self._rows[-1], len(self._rows)))
        return self._rows[m]


SHARED_TABLE = EulerianBTable()


def eulerian_b(m: int, table: EulerianBTable = SHARED_TABLE) -> ExactPolynomial:
    """The degree-m type-B Eulerian polynomial with exact coefficients."""
    return ExactPolynomial(table.row(m))


def dump_row(m: int, table: EulerianBTable = SHARED_TABLE) -> str:
    """Debug rendering of one table row: one decimal integer per line."""
    return "".join(f"{c}\n" for c in table.row(m))


def series_identity_check(m: int, table: EulerianBTable = SHARED_TABLE) -> bool:
    """True iff B_m matches its generating-series expansion through order m.

    Expands (1 - x)^{m+1} * sum_{k=0}^{m} (2k + 1)^m x^k and compares the
    coefficients of degrees 0..m with the recurrence-built row.  Higher-order
    coefficients of the product are meaningless (the series was truncated)
    and are ignored.
    """
    row = table.row(m)
    powers = [(2 * k + 1) ** m for k in range(m + 1)]
    for k in range(m + 1):
        acc = 0
        for j in range(k + 1):
            term = comb(m + 1, j) * powers[k - j]
            acc += -term if j % 2 else term
        if acc != row[k]:
            return False
    return True


def s_m_partial(m: int, x: Fraction, terms: int) -> Fraction:
    """Exact partial sum sum_{k=0}^{terms} (2k + 1)^m x^k for rational x in (0, 1).

    Accumulated over the common denominator den**terms so the whole sum costs
    one Fraction normalization instead of one per term.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    if terms < 0:
        raise ValueError("terms must be non-negative")
    x = Fraction(x)
    if not 0 < x < 1:
        raise ValueError("x must lie in (0, 1)")
    num, den = x.numerator, x.denominator
    scale = den**terms  # num**k * den**(terms - k), stepped by * num // den
    acc = 0
    for k in range(terms + 1):
        acc += (2 * k + 1) ** m * scale
        if k < terms:
            scale = scale * num // den
    return Fraction(acc, den**terms)


def geometric_tail_bound(m: int, x: Fraction, terms: int) -> Fraction:
    """First omitted coefficient times the geometric tail: (2K+3)^m x^(K+1)/(1-x).

    For m >= 1 this does NOT dominate the raw series tail, whose coefficients
    keep growing; it is the right yardstick only for quantities damped by a
    (1 - x)^(m+1) prefactor, where the overshoot of the true tail is absorbed
    with room to spare.  Use `certified_tail_bound` when the raw tail itself
    must be enclosed.
    """
    x = Fraction(x)
    if not 0 < x < 1:
        raise ValueError("x must lie in (0, 1)")
    return (2 * terms + 3) ** m * x ** (terms + 1) / (1 - x)


def certified_tail_bound(m: int, x: Fraction, terms: int) -> Fraction:
    """Rigorous upper bound for the omitted tail sum_{k > K} (2k + 1)^m x^k.

    By Bernoulli's inequality (2K+3+2j) <= (2K+3) * ((2K+5)/(2K+3))^j, so the
    tail is dominated by a geometric series with ratio
    r = x * ((2K+5)/(2K+3))^m, valid whenever r < 1.  The bound is strictly
    decreasing in K on its validity range.
    """
    x = Fraction(x)
    if not 0 < x < 1:
        raise ValueError("x must lie in (0, 1)")
    ratio = x * Fraction(2 * terms + 5, 2 * terms + 3) ** m
    if ratio >= 1:
        raise ValueError("tail ratio >= 1; increase the number of terms")
    return (2 * terms + 3) ** m * x ** (terms + 1) / (1 - ratio)


def _min_terms(bound, tol: Fraction) -> int:
    """Smallest K with bound(K) <= tol, for a bound that either is valid and
    eventually strictly decreasing (raising ValueError before validity) or is
    unimodal in K; both shapes make the doubling-plus-bisection below exact."""

    def ok(k: int) -> bool:
        try:
            return bound(k) <= tol
        except ValueError:
            return False

    if ok(0):
        return 0
    lo, hi = 0, 1
    while not ok(hi):
        lo, hi = hi, hi * 2
        if hi > 10**9:
            raise ValueError("tolerance unreachable at sane truncation depth")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def min_terms_for_tail(m: int, x: Fraction, tol: Fraction) -> int:
    """Minimal K such that geometric_tail_bound(m, x, K) <= tol.

    The bound is unimodal in K (one rise, then strict decay to zero), so if
    K = 0 fails, every K below the crossing point on the decaying branch
    fails too and bisection between the last failure and the first success
    finds the true minimum.
    """
    x, tol = Fraction(x), Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    return _min_terms(lambda k: geometric_tail_bound(m, x, k), tol)


def min_terms_for_certified_tail(m: int, x: Fraction, tol: Fraction) -> int:
    """Minimal K such that certified_tail_bound(m, x, K) <= tol."""
    x, tol = Fraction(x), Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    return _min_terms(lambda k: certified_tail_bound(m, x, k), tol)
