"""Numerical invariants of graded algebras: h-polynomial, dimensions, multiplicity."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Optional

from .errors import InternalCheckError, InvalidRange, UsageError
from .series import IntPolynomial, eval_int, expand_rational_series


@dataclass(frozen=True)
class AlgebraNumerics:
    """Hilbert data of a standard graded algebra R with H_R(z) = h(z) / (1-z)^dim.

    The multiplicity is always derived as h(1); it is never an input.
    """

    h_poly: IntPolynomial
    dim: int
    embdim: int
    is_complete_intersection: Optional[bool] = None
    label: str = ""
    codim: int = field(init=False)
    multiplicity: int = field(init=False)

    def __post_init__(self):
        if not isinstance(self.h_poly, IntPolynomial):
            object.__setattr__(self, "h_poly", IntPolynomial(self.h_poly))
        if self.h_poly[0] != 1:
            raise UsageError(f"h-polynomial must have constant term 1, got {self.h_poly}")
        if self.dim < 0 or self.embdim < self.dim:
            raise UsageError(f"need 0 <= dim <= embdim, got dim={self.dim}, embdim={self.embdim}")
        object.__setattr__(self, "codim", self.embdim - self.dim)
        object.__setattr__(self, "multiplicity", eval_int(self.h_poly, 1))


def _quadric_count(embdim: int, hf2: int) -> int:
    # minimal quadric generators of a quadratically presented algebra
    return comb(embdim + 1, 2) - hf2


def _check_against_hilbert_function(h: IntPolynomial, dim: int, hf, upto: int, label: str):
    series = expand_rational_series(h, dim, upto)
    for i in range(upto + 1):
        if series[i] != hf(i):
            raise InternalCheckError(
                f"{label}: h-polynomial disagrees with the Hilbert function at degree {i} "
                f"({series[i]} != {hf(i)})"
            )


def veronese_numerics(n: int, c: int) -> AlgebraNumerics:
    """Numerics of the c-th Veronese subring of k[x_1..x_n]."""
    if n < 1 or c < 2:
        raise InvalidRange(f"Veronese needs n >= 1 and c >= 2, got n={n}, c={c}")

    def hf(i):
        return comb(n - 1 + i * c, n - 1)

    coeffs = [
        sum((-1) ** (i - j) * hf(j) * comb(n, i - j) for j in range(i + 1))
        for i in range(n)
    ]
    h = IntPolynomial(coeffs)
    label = f"veronese({n},{c})"
    _check_against_hilbert_function(h, n, hf, n + 5, label)
    embdim = comb(n + c - 1, c)
    # Veronese rings are domains cut out by quadrics: CI iff #quadrics == codim
    is_ci = _quadric_count(embdim, hf(2)) == embdim - n
    return AlgebraNumerics(h, n, embdim, is_ci, label)


def segre_numerics(m: int, n: int) -> AlgebraNumerics:
    """Numerics of the Segre product of k[x_1..x_m] and k[y_1..y_n], m <= n."""
    if m < 1 or m > n:
        raise InvalidRange(f"Segre needs 1 <= m <= n, got m={m}, n={n}")

    def hf(i):
        return comb(m - 1 + i, m - 1) * comb(n - 1 + i, n - 1)

    h = IntPolynomial(comb(m - 1, i) * comb(n - 1, i) for i in range(m))
    label = f"segre({m},{n})"
    _check_against_hilbert_function(h, m + n - 1, hf, m + n + 4, label)
    embdim = m * n
    is_ci = _quadric_count(embdim, hf(2)) == embdim - (m + n - 1)
    return AlgebraNumerics(h, m + n - 1, embdim, is_ci, label)


def user_numerics(h_poly, dim: int, embdim: int, is_complete_intersection=None, label="user") -> AlgebraNumerics:
    return AlgebraNumerics(IntPolynomial(h_poly), dim, embdim, is_complete_intersection, label)


def hilbert_function_value(a: AlgebraNumerics, i: int) -> int:
    if i < 0:
        raise InvalidRange("degree must be non-negative")
    return expand_rational_series(a.h_poly, a.dim, i)[i]


def _and3(x: Optional[bool], y: Optional[bool]) -> Optional[bool]:
    if x is False or y is False:
        return False
    if x is None or y is None:
        return None
    return True


def tensor_numerics(a: AlgebraNumerics, b: AlgebraNumerics) -> AlgebraNumerics:
    return AlgebraNumerics(
        a.h_poly * b.h_poly,
        a.dim + b.dim,
        a.embdim + b.embdim,
        _and3(a.is_complete_intersection, b.is_complete_intersection),
        f"{a.label} (x) {b.label}",
    )
