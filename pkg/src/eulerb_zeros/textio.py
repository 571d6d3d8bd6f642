"""Deterministic text formatting and atomic file output.

Every number that leaves the package goes through `format_real`, which prints
a fixed count of significant digits derived from the working precision.  Two
runs with the same configuration therefore produce byte-identical files on
any platform.
"""

from __future__ import annotations

import os
import re
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path

import mpmath

_UNIT_DECIMAL = re.compile(r"^0\.(\d+)$")


def output_digits(precision_bits: int) -> int:
    """Significant decimal digits used for printing: ceil(bits * 0.301)."""
    return -((-precision_bits * 301) // 1000)


def format_real(value, digits: int) -> str:
    """Fixed-width significant-digit rendering of an exact or mpf value."""
    prec = int(digits * 3.3219) + 16
    with mpmath.workprec(prec):
        val = mpmath.mpmathify(value)
        return mpmath.nstr(val, digits, strip_zeros=False)


def format_eps_token(eps: Fraction) -> str:
    """Canonical token for a rational tolerance: 1e-K when it is a negative
    power of ten, num/den otherwise."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    num, den = eps.numerator, eps.denominator
    if num == 1 and den == 10 ** (len(str(den)) - 1):
        return f"1e-{len(str(den)) - 1}"
    return f"{num}/{den}"


def parse_eps_token(token: str) -> Fraction:
    """Parse the tolerance tokens accepted in configs and cache headers."""
    token = token.strip()
    if "/" in token:
        num_s, den_s = token.split("/", 1)
        return Fraction(int(num_s), int(den_s))
    try:
        return Fraction(Decimal(token))
    except InvalidOperation as exc:
        raise ValueError(f"cannot parse tolerance {token!r}") from exc


def format_unit_decimal(value: Fraction, places: int) -> str:
    """Exact decimal rendering of a value in (0, 1) whose denominator divides
    10**places; trailing zeros are kept because the digit count carries the
    radius information on reload."""
    if not 0 < value < 1:
        raise ValueError("value must lie in (0, 1)")
    scaled = value * 10**places
    if scaled.denominator != 1:
        raise ValueError(f"value is not a {places}-place decimal")
    return f"0.{scaled.numerator:0{places}d}"


def parse_unit_decimal(text: str) -> tuple[Fraction, int]:
    """Inverse of format_unit_decimal; returns (value, places)."""
    match = _UNIT_DECIMAL.match(text.strip())
    if match is None:
        raise ValueError(f"not a unit-interval decimal: {text!r}")
    digits = match.group(1)
    return Fraction(int(digits), 10 ** len(digits)), len(digits)


def atomic_write_text(path: Path, text: str) -> None:
    """Write via a temporary file and rename, so readers never see a torn file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f"{path.name}.{os.getpid()}.tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)
