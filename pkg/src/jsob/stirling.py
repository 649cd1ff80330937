"""Jacobi-Stirling and Legendre-Stirling numbers and composite-power coefficients.

The Jacobi-Stirling number {n, j} is evaluated from the explicit alternating
sum

    {n, j} = sum_{r=2}^{j} (-1)^(r+j) (2r-1) (r-2)! [r(r-1)]^n / (r! (j-r)! (j+r-1)!)

for 2 <= j <= n, with {n, j} = delta_{n,j} for j in {0, 1} and {n, j} = 0 for
j > n (the triangle is upper-triangular with unit diagonal).  The sum is
computed over exact rationals and the result is asserted to be a nonnegative
integer before it is returned; a failure of that assertion is an arithmetic
fault, not a property of the numbers.

The coefficients c_j(n, k) combine the triangle with powers of the spectral
shift k >= 0 and are the coefficients of the n-th composite power of the
differential expression; they satisfy the defining identity

    sum_j c_j(n, k) m! (m+j-2)! / ((m-j)! (m-2)!) = (m(m-1) + k)^n   (m >= 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .algebra import RationalLike, as_fraction

__all__ = [
    "NonIntegerResult",
    "CompositeCoefficients",
    "StirlingTable",
    "jacobi_stirling",
    "legendre_stirling",
    "composite_coefficients",
    "verify_defining_identity",
    "build_table",
]


class NonIntegerResult(ArithmeticError):
    """The alternating sum failed to produce a nonnegative integer."""


@lru_cache(maxsize=None)
def jacobi_stirling(n: int, j: int) -> int:
    """Jacobi-Stirling number {n, j} as an arbitrary-precision integer."""
    if n < 0 or j < 0:
        raise ValueError("indices must be nonnegative")
    if j <= 1:
        return 1 if n == j else 0
    if j > n:
        return 0
    total = Fraction(0)
    for r in range(2, j + 1):
        term = Fraction(
            (2 * r - 1) * factorial(r - 2) * (r * (r - 1)) ** n,
            factorial(r) * factorial(j - r) * factorial(j + r - 1),
        )
        if (r + j) % 2:
            term = -term
        total += term
    if total.denominator != 1 or total < 0:
        raise NonIntegerResult(f"sum for ({n}, {j}) evaluated to {total}")
    return total.numerator


def legendre_stirling(n: int, j: int) -> int:
    """Legendre-Stirling number, via the index shift {n, j}_Legendre = {n+1, j+1}."""
    if n < 0 or j < 0:
        raise ValueError("indices must be nonnegative")
    return jacobi_stirling(n + 1, j + 1)


@dataclass(frozen=True)
class CompositeCoefficients:
    """Coefficients c_j(n, k), j = 0..n, of the n-th composite power."""

    n: int
    k: Fraction
    c: tuple[Fraction, ...]


def composite_coefficients(n: int, k: RationalLike) -> CompositeCoefficients:
    """c_0 = k^n for k > 0 (and 0 for k = 0); c_j = sum_r binom(n, r) {n-r, j} k^r.

    All coefficients are nonnegative and c_n = 1.
    """
    k = as_fraction(k)
    if n < 1:
        raise ValueError("the composite power index must be >= 1")
    if k < 0:
        raise ValueError("the spectral shift k must be nonnegative")
    coeffs = [k**n if k > 0 else Fraction(0)]
    for j in range(1, n + 1):
        cj = Fraction(0)
        kpow = Fraction(1)
        for r in range(0, n - j + 1):
            cj += comb(n, r) * jacobi_stirling(n - r, j) * kpow
            kpow *= k
        coeffs.append(cj)
    assert coeffs[n] == 1 and all(c >= 0 for c in coeffs)
    return CompositeCoefficients(n=n, k=k, c=tuple(coeffs))


def verify_defining_identity(n: int, m: int, k: RationalLike) -> bool:
    """Exact check of sum_j c_j(n,k) m!(m+j-2)!/((m-j)!(m-2)!) = (m(m-1)+k)^n.

    The factorial ratio is evaluated as falling(m, j) * rising(m-1, j), which
    realizes the convention 1/(m-j)! = 0 for j > m through a zero factor.
    """
    if m < 2:
        raise ValueError("the identity needs m >= 2 for (m-2)!")
    k = as_fraction(k)
    coeffs = composite_coefficients(n, k).c
    lhs = Fraction(0)
    for j, cj in enumerate(coeffs):
        factor = Fraction(1)
        for i in range(j):
            factor *= (m - i) * (m - 1 + i)
        lhs += cj * factor
    return lhs == (Fraction(m * (m - 1)) + k) ** n


@dataclass(frozen=True)
class StirlingTable:
    """The triangle {n, j} for 0 <= n, j <= max_n."""

    max_n: int
    entries: dict[tuple[int, int], int]

    def entry(self, n: int, j: int) -> int:
        return self.entries[(n, j)]


def build_table(max_n: int) -> StirlingTable:
    if max_n < 0:
        raise ValueError("max_n must be nonnegative")
    entries = {
        (n, j): jacobi_stirling(n, j)
        for n in range(max_n + 1)
        for j in range(max_n + 1)
    }
    return StirlingTable(max_n=max_n, entries=entries)
