"""The rescaled polynomial family built from odd-index type-B Eulerian rows.

With M = 2n - 1 and b_0..b_M the coefficients of B_M, the expansion

    P(x) = sum_k (-1)^k b_k (1 - x)^k (1 + x)^(M - k)

always has zero constant term, and P(x)/x contains only even powers of x.
Halving those exponents and applying the scale (-1)^(n+1) / (2^(4n-1) (2n-1)!)
yields the degree-(n-1) polynomial whose zeros in (0, 1) the rest of the
package isolates and measures.  Both structural facts are asserted loudly on
every build: a violation means an upstream arithmetic bug, not bad input.

The logarithmic derivative of that polynomial has a closed form in terms of
two consecutive Eulerian rows evaluated at y = -(1 - sqrt(x))/(1 + sqrt(x)).
`log_derivative_formula` evaluates it in high-precision floating point, and
`log_derivative_direct` evaluates the same quantity exactly from the stored
coefficients, which turns the closed form into a testable identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import mpmath

from .errors import CacheFormatError, PoleProximityError
from .eulerb_poly import SHARED_TABLE, EulerianBTable
from .polynomial import ExactPolynomial
from .textio import atomic_write_text


@dataclass(frozen=True)
class XiPolynomial:
    """One member of the family: the raw polynomial, its even-power half, and
    the rational scale that was applied to both."""

    n: int
    xi: ExactPolynomial
    xi_tilde: ExactPolynomial
    scale: Fraction


def _family_scale(n: int) -> Fraction:
    sign = 1 if n % 2 == 1 else -1
    return Fraction(sign, 2 ** (4 * n - 1) * math.factorial(2 * n - 1))


@lru_cache(maxsize=None)
def build_xi(n: int) -> XiPolynomial:
    """Construct the degree-(2n-2) polynomial and its degree-(n-1) half.

    The expansion runs Horner-style over k with integer coefficients only:
    multiply the accumulator by (1 - x), then add b_k (-1)^k (1 + x)^(M - k)
    from an incrementally maintained binomial row.
    """
    if n < 1:
        raise ValueError("family index must be at least 1")
    m_top = 2 * n - 1
    row = SHARED_TABLE.row(m_top)
    signed = [-row[k] if k % 2 else row[k] for k in range(m_top + 1)]

    acc = [signed[m_top]]
    binrow = [1]  # coefficients of (1 + x)**(M - j), grown as j descends
    for j in range(m_top - 1, -1, -1):
        binrow = [1] + [binrow[i] + binrow[i + 1] for i in range(len(binrow) - 1)] + [1]
        nxt = [0] * (len(acc) + 1)
        for i, a in enumerate(acc):
            nxt[i] += a
            nxt[i + 1] -= a
        cj = signed[j]
        for i, b in enumerate(binrow):
            nxt[i] += cj * b
        acc = nxt

    if acc[0] != 0:
        raise ArithmeticError(f"constant term {acc[0]} != 0 at n={n}; arithmetic bug upstream")
    quotient = acc[1:]
    for i in range(1, len(quotient), 2):
        if quotient[i] != 0:
            raise ArithmeticError(f"odd-power coefficient at degree {i}, n={n}; arithmetic bug upstream")

    scale = _family_scale(n)
    xi = ExactPolynomial(scale * c for c in quotient)
    xi_tilde = ExactPolynomial(scale * c for c in quotient[0::2])
    if xi_tilde.degree != n - 1:
        raise ArithmeticError(f"degree {xi_tilde.degree} != {n - 1} at n={n}; arithmetic bug upstream")
    return XiPolynomial(n=n, xi=xi, xi_tilde=xi_tilde, scale=scale)


def log_derivative_direct(n: int, x: Fraction) -> Fraction:
    """Exact logarithmic derivative of the degree-(n-1) polynomial at x."""
    x = Fraction(x)
    if not 0 < x < 1:
        raise ValueError("x must lie in (0, 1)")
    poly = build_xi(n).xi_tilde
    value = poly(x)
    if value == 0:
        raise PoleProximityError(f"x={x} is a zero of the n={n} polynomial")
    return poly.derivative()(x) / value


def _horner_mpf(coeffs, y):
    acc = mpmath.mpf(0)
    for c in reversed(coeffs):
        acc = acc * y + c
    return acc


def log_derivative_formula(
    n: int,
    x,
    precision_bits: int = 128,
    table: EulerianBTable = SHARED_TABLE,
) -> mpmath.mpf:
    """Closed-form logarithmic derivative from two consecutive Eulerian rows.

    Evaluates, with s = sqrt(x) and y = -(1 - s)/(1 + s),

        (2n-1)/(2 s (1+s)) - 1/(2x)
            - (B_{2n}(y)/B_{2n-1}(y) - ((4n-1) y + 1)) / (4 s (1-s)).

    Working precision is escalated well beyond the requested precision_bits
    because the two row evaluations at negative y cancel heavily near the
    polynomial's zeros.  When B_{2n-1}(y) is smaller than the escalated
    precision can distinguish from zero, the point is a zero for all
    practical purposes and PoleProximityError is raised instead of returning
    a meaningless quotient.
    """
    if n < 1:
        raise ValueError("family index must be at least 1")
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    exact = isinstance(x, (int, Fraction))
    if exact:
        x = Fraction(x)
        if not 0 < x < 1:
            raise ValueError("x must lie in (0, 1)")
    wp = 2 * precision_bits + 4 * n + 64
    with mpmath.workprec(wp):
        if exact:
            xm = mpmath.mpmathify(x)
            omx = mpmath.mpmathify(1 - x)  # exact rational 1 - x, then one rounding
        else:
            xm = mpmath.mpmathify(x)
            if not 0 < xm < 1:
                raise ValueError("x must lie in (0, 1)")
            omx = 1 - xm
        s = mpmath.sqrt(xm)
        ops = 1 + s
        y = -omx / (ops * ops)

        row_lo = table.row(2 * n - 1)
        row_hi = table.row(2 * n)
        b_lo = _horner_mpf(row_lo, y)
        b_hi = _horner_mpf(row_hi, y)
        magnitude = _horner_mpf(row_lo, -y)  # all coefficients positive, so this bounds the size
        if abs(b_lo) < magnitude * mpmath.mpf(2) ** (-(wp // 2)):
            raise PoleProximityError(
                f"B_{2 * n - 1} vanishes at y(x) within working precision; x is a root of the n={n} polynomial"
            )

        bracket = b_hi / b_lo - ((4 * n - 1) * y + 1)
        # 1 - s = omx / (1 + s) avoids cancellation near x = 1
        edge_term = bracket * ops / (4 * s * omx)
        return (2 * n - 1) / (2 * s * ops) - 1 / (2 * xm) - edge_term


# ---------------------------------------------------------------------------
# Versioned text serialization.  Only the even-power half is stored; the raw
# polynomial is recovered by doubling exponents, which the build invariant
# makes exact.

_XI_HEADER = "xi v1"


def xi_to_text(poly: XiPolynomial) -> str:
    lines = [f"{_XI_HEADER} n={poly.n}"]
    for degree, coeff in enumerate(poly.xi_tilde.coeffs):
        if coeff != 0:
            lines.append(f"{degree} {coeff.numerator}/{coeff.denominator}")
    return "\n".join(lines) + "\n"


def xi_from_text(text: str) -> XiPolynomial:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise CacheFormatError("empty xi payload")
    header = lines[0].split()
    if header[:2] != _XI_HEADER.split() or len(header) != 3 or not header[2].startswith("n="):
        raise CacheFormatError(f"unsupported xi header: {lines[0]!r}")
    n = int(header[2][2:])
    if n < 1:
        raise CacheFormatError(f"bad family index in header: {n}")
    coeffs: dict[int, Fraction] = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise CacheFormatError(f"bad coefficient line: {ln!r}")
        degree = int(parts[0])
        num_s, _, den_s = parts[1].partition("/")
        coeffs[degree] = Fraction(int(num_s), int(den_s or "1"))
    if not coeffs or max(coeffs) != n - 1:
        raise CacheFormatError(f"coefficients do not form a degree-{n - 1} polynomial")
    tilde = [coeffs.get(k, Fraction(0)) for k in range(n)]
    raw = [Fraction(0)] * (2 * n - 1)
    for k, c in enumerate(tilde):
        raw[2 * k] = c
    return XiPolynomial(
        n=n,
        xi=ExactPolynomial(raw),
        xi_tilde=ExactPolynomial(tilde),
        scale=_family_scale(n),
    )


def save_xi(poly: XiPolynomial, path: Path) -> None:
    atomic_write_text(Path(path), xi_to_text(poly))


def load_xi(path: Path) -> XiPolynomial:
    return xi_from_text(Path(path).read_text(encoding="utf-8"))
