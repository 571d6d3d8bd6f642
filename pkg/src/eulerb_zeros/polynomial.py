"""Dense univariate polynomial arithmetic over exact rationals.

Coefficients are stored low degree first as `fractions.Fraction` values in a
tuple with trailing zeros stripped, so the degree is the length minus one and
the zero polynomial is the empty tuple with degree -1.  Floats are rejected
on construction: silent binary noise would defeat every certification step
built on top of this module.

The integer-only helpers at the bottom operate on plain coefficient lists.
They exist because the root-isolation machinery must evaluate long remainder
chains at rational points millions of times, and staying in `int` with a
single scaling denominator is far cheaper than normalizing a `Fraction` per
operation.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

RationalLike = Union[int, Fraction]


def _as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction coefficient, got {type(value).__name__}")


class ExactPolynomial:
    """Immutable dense polynomial with exact rational coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()) -> None:
        items = [_as_fraction(c) for c in coeffs]
        while items and items[-1] == 0:
            items.pop()
        self._coeffs = tuple(items)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ExactPolynomial):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"ExactPolynomial({list(self._coeffs)!r})"

    def __neg__(self) -> "ExactPolynomial":
        return ExactPolynomial(-c for c in self._coeffs)

    def __add__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        if not isinstance(other, ExactPolynomial):
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return ExactPolynomial(out)

    def __sub__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        if not isinstance(other, ExactPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "ExactPolynomial | RationalLike") -> "ExactPolynomial":
        if isinstance(other, (int, Fraction)):
            k = _as_fraction(other)
            return ExactPolynomial(c * k for c in self._coeffs)
        if not isinstance(other, ExactPolynomial):
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return ExactPolynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return ExactPolynomial(out)

    __rmul__ = __mul__

    def derivative(self) -> "ExactPolynomial":
        return ExactPolynomial(k * c for k, c in enumerate(self._coeffs) if k > 0)

    def __call__(self, x: RationalLike) -> Fraction:
        """Exact Horner evaluation at a rational point."""
        xf = _as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * xf + c
        return acc

    def primitive_int_coeffs(self) -> tuple[int, ...]:
        """Integer coefficients after scaling by a positive rational.

        The scaling factor is positive, so signs (and hence sign variations)
        are preserved; the result has content 1.
        """
        if not self._coeffs:
            return ()
        den_lcm = 1
        for c in self._coeffs:
            den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
        ints = [int(c * den_lcm) for c in self._coeffs]
        content = 0
        for v in ints:
            content = gcd(content, v)
        return tuple(v // content for v in ints)


def poly_divmod(a: ExactPolynomial, b: ExactPolynomial) -> tuple[ExactPolynomial, ExactPolynomial]:
    """Quotient and remainder of exact rational division; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a.coeffs)
    db = b.degree
    lead = b.coeffs[-1]
    quot = [Fraction(0)] * max(0, len(rem) - db)
    while len(rem) - 1 >= db and rem:
        if rem[-1] == 0:
            rem.pop()
            continue
        shift = len(rem) - 1 - db
        factor = rem[-1] / lead
        quot[shift] = factor
        for i, c in enumerate(b.coeffs):
            rem[shift + i] -= factor * c
        rem.pop()
    return ExactPolynomial(quot), ExactPolynomial(rem)


# ---------------------------------------------------------------------------
# Integer coefficient helpers.


def int_derivative(coeffs: Sequence[int]) -> tuple[int, ...]:
    return tuple(k * c for k, c in enumerate(coeffs) if k > 0)


def int_content(coeffs: Sequence[int]) -> int:
    content = 0
    for v in coeffs:
        content = gcd(content, v)
    return content


def int_primitive(coeffs: Sequence[int]) -> tuple[int, ...]:
    items = list(coeffs)
    while items and items[-1] == 0:
        items.pop()
    if not items:
        return ()
    content = int_content(items)
    return tuple(v // content for v in items)


def int_eval_scaled(coeffs: Sequence[int], num: int, den: int) -> int:
    """p(num/den) * den**degree(p) as an exact integer; den > 0.

    Keeping the denominator power implicit lets callers read off the sign of
    p at a rational point without ever building a Fraction.
    """
    if den <= 0:
        raise ValueError("denominator must be positive")
    if not coeffs:
        return 0
    acc = coeffs[-1]
    dp = den
    for c in reversed(coeffs[:-1]):
        acc = acc * num + c * dp
        dp *= den
    return acc


def _pseudo_remainder(a: Sequence[int], b: Sequence[int]) -> tuple[list[int], int]:
    """Remainder of lb**t * a modulo b over the integers, with t returned.

    lb is the leading coefficient of b and t the number of elimination steps
    performed, so the true rational remainder of a by b equals R / lb**t.
    """
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    t = 0
    while len(r) - 1 >= db and r:
        t += 1
        lead = r[-1]
        r = [lb * c for c in r]
        shift = len(r) - 1 - db
        for i, c in enumerate(b):
            r[shift + i] -= lead * c
        r.pop()  # leading term cancels exactly
        while r and r[-1] == 0:
            r.pop()
    return r, t


def sturm_remainder_chain(p: Sequence[int], q: Sequence[int]) -> list[tuple[int, ...]]:
    """Primitive remainder sequence with the sign convention of Sturm theory.

    Each element after the first two is the negated exact rational remainder
    of the previous pair, rescaled by a positive constant so coefficients
    stay integral and primitive.  Positivity of the rescaling is essential:
    it keeps every sign variation count equal to that of the rational chain.
    The remainder from pseudo-division is lb**t times the rational one, so
    the sign flip below depends on the parity of t when lb is negative.
    """
    first = int_primitive(p)
    second = int_primitive(q)
    if not first:
        raise ValueError("zero polynomial has no remainder chain")
    chain: list[tuple[int, ...]] = [first]
    if not second:
        return chain
    chain.append(second)
    while len(chain[-1]) > 1:
        rem, t = _pseudo_remainder(chain[-2], chain[-1])
        if not rem:
            break
        lb = chain[-1][-1]
        if lb < 0 and t % 2 == 1:
            nxt = rem  # lb**t < 0 already negated the rational remainder
        else:
            nxt = [-c for c in rem]
        chain.append(int_primitive(nxt))
    return chain


def poly_gcd(a: ExactPolynomial, b: ExactPolynomial) -> ExactPolynomial:
    """Greatest common divisor, primitive with positive leading coefficient."""
    if not a and not b:
        return ExactPolynomial()
    if not a or not b:
        src = a if a else b
        ints = src.primitive_int_coeffs()
        sign = 1 if ints[-1] > 0 else -1
        return ExactPolynomial(sign * c for c in ints)
    chain = sturm_remainder_chain(a.primitive_int_coeffs(), b.primitive_int_coeffs())
    tail = chain[-1]
    sign = 1 if tail[-1] > 0 else -1
    return ExactPolynomial(sign * c for c in tail)
