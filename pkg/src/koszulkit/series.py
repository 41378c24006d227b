"""Dense univariate integer polynomials and truncated power series.

Everything here is exact: coefficients are Python ints, so the 150-digit
coefficients that show up in Veronese obstruction series are no problem.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import zip_longest
from typing import Iterable, Sequence

from .errors import ZeroPolynomial


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = [int(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial in z with integer coefficients; ``coefficients[i]`` multiplies z**i."""

    coefficients: tuple[int, ...] = ()

    def __init__(self, coefficients: Iterable[int] = ()):
        object.__setattr__(self, "coefficients", _trim(coefficients))

    @classmethod
    def one(cls) -> IntPolynomial:
        return cls((1,))

    @classmethod
    def one_plus_z_power(cls, a: int) -> IntPolynomial:
        p = cls.one()
        for _ in range(a):
            p = p * cls((1, 1))
        return p

    @property
    def degree(self) -> int:
        # -1 for the zero polynomial
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __getitem__(self, i: int) -> int:
        if 0 <= i < len(self.coefficients):
            return self.coefficients[i]
        return 0

    def __len__(self) -> int:
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def __call__(self, x: int) -> int:
        return eval_int(self, x)

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        return IntPolynomial(a + b for a, b in zip_longest(self, other, fillvalue=0))

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return IntPolynomial(a - b for a, b in zip_longest(self, other, fillvalue=0))

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-a for a in self)

    def __mul__(self, other: IntPolynomial | int) -> IntPolynomial:
        if isinstance(other, int):
            return IntPolynomial(a * other for a in self)
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self):
            if a:
                for j, b in enumerate(other):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def negate_variable(self) -> IntPolynomial:
        """Substitute z -> -z."""
        return IntPolynomial(a if i % 2 == 0 else -a for i, a in enumerate(self))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, a in enumerate(self):
            if a == 0:
                continue
            mag = abs(a)
            if i == 0:
                body = str(mag)
            else:
                coef = "" if mag == 1 else str(mag)
                body = coef + ("z" if i == 1 else f"z^{i}")
            sign = "-" if a < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients of z**0 .. z**order of a power series."""

    coefficients: tuple[int, ...]
    order: int

    def __post_init__(self):
        if len(self.coefficients) != self.order + 1:
            raise ValueError(
                f"series of order {self.order} needs {self.order + 1} coefficients, "
                f"got {len(self.coefficients)}"
            )

    def __getitem__(self, k: int) -> int:
        return self.coefficients[k]

    def __len__(self) -> int:
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def as_polynomial(self) -> IntPolynomial:
        return IntPolynomial(self.coefficients)


def _inverse_power_coefficients(c: int, order: int) -> list[int]:
    # coefficients of 1/(1-z)^c, i.e. binom(c-1+k, k)
    out = [1] * (order + 1)
    for k in range(1, order + 1):
        out[k] = out[k - 1] * (c - 1 + k) // k
    return out


def expand_rational_series(numerator: IntPolynomial, c: int, order: int) -> TruncatedSeries:
    """Expand ``numerator / (1 - z)**c`` up to and including z**order."""
    if c < 0 or order < 0:
        raise ValueError("denominator exponent and order must be non-negative")
    num = list(numerator.coefficients[: order + 1])
    if c == 0:
        return TruncatedSeries(tuple(num + [0] * (order + 1 - len(num))), order)
    binoms = _inverse_power_coefficients(c, order)
    out = []
    for k in range(order + 1):
        total = 0
        for j in range(min(k, len(num) - 1) + 1):
            if num[j]:
                total += num[j] * binoms[k - j]
        out.append(total)
    return TruncatedSeries(tuple(out), order)


def factor_out_neg_one(p: IntPolynomial) -> tuple[int, IntPolynomial]:
    """Write p = (1+z)**a * g with g(-1) != 0; returns (a, g)."""
    if p.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    a = 0
    g = p
    while eval_int(g, -1) == 0:
        g = _divide_by_one_plus_z(g)
        a += 1
    return a, g


def _divide_by_one_plus_z(p: IntPolynomial) -> IntPolynomial:
    # synthetic division from the top coefficient down; exact by assumption
    coeffs = p.coefficients
    n = len(coeffs) - 1
    q = [0] * (n + 1)
    for i in range(n, 0, -1):
        q[i - 1] = coeffs[i] - q[i]
    if coeffs[0] != q[0]:
        raise ArithmeticError("polynomial is not divisible by 1+z")
    return IntPolynomial(q)


def eval_int(p: IntPolynomial | Sequence[int], x: int) -> int:
    total = 0
    for a in reversed(tuple(p)):
        total = total * x + a
    return total
