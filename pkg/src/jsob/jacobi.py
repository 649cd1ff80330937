"""Jacobi polynomial families, classical and nonclassical.

Three normalizations are supported:

* ``Normalization.REFERENCE`` -- the textbook family, any parameters >= -1,
  P_n(1) = binom(n + alpha, n).  For alpha = beta = -1 this family has
  P_1 identically zero and degrees >= 2 vanishing at both endpoints.
* ``Normalization.L2`` -- orthonormal in the weighted space with weight
  (1 - x)^alpha (1 + x)^beta.  Exact mode covers integer alpha, beta >= 0
  (polynomial weight, rational squared norms) and the nonclassical family
  for degree >= 2, whose squared norm against (1 - x^2)^(-1) is
  1 / (n (n - 1)).  The degree 0 and 1 members of the nonclassical family
  are not in that space.
* ``Normalization.PHI`` -- the Sobolev-orthonormal convention for the
  nonclassical family only: degree 0 is 1, degree 1 is x / sqrt(3), and for
  n >= 2 the renormalization sqrt(4n - 2) / (n - 1) is applied to the
  binomial sum with upper indices n - 1.

Square-root scale factors live in ``ScaledPolynomial``; identity checks
between such functions compare squared forms plus the leading-coefficient
sign, which is exact and decidable.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .algebra import (
    ONE_MINUS_X2,
    Polynomial,
    RationalLike,
    ScaledPolynomial,
    as_fraction,
    integrate_jacobi_weight,
    integrate_weighted,
)

__all__ = [
    "JacobiParams",
    "NONCLASSICAL",
    "Normalization",
    "UndefinedNormalization",
    "PoleInGammaRatio",
    "NotProportional",
    "classical_jacobi",
    "nonclassical_jacobi",
    "jacobi_family",
    "derivative_coefficient_squared",
    "check_derivative_identity",
    "factorization_check",
    "proportional_scale_squared",
]


class UndefinedNormalization(ValueError):
    """The requested normalization does not exist for these parameters/degree."""


class PoleInGammaRatio(ArithmeticError):
    """The Gamma-ratio shift product is anchored at a nonpositive integer."""


class NotProportional(ArithmeticError):
    """Two polynomials expected to be scalar multiples are not."""


@dataclass(frozen=True, init=False)
class JacobiParams:
    """Parameter pair (alpha, beta) with alpha, beta >= -1."""

    alpha: Fraction
    beta: Fraction

    def __init__(self, alpha: RationalLike, beta: RationalLike):
        a, b = as_fraction(alpha), as_fraction(beta)
        if a < -1 or b < -1:
            raise ValueError("parameters below -1 are out of scope")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def is_nonclassical(self) -> bool:
        return self.alpha == -1 and self.beta == -1

    @property
    def is_nonnegative_integer_pair(self) -> bool:
        return (
            self.alpha.denominator == 1
            and self.beta.denominator == 1
            and self.alpha >= 0
            and self.beta >= 0
        )

    def shifted(self, j: int) -> "JacobiParams":
        return JacobiParams(self.alpha + j, self.beta + j)


NONCLASSICAL = JacobiParams(-1, -1)


class Normalization(Enum):
    REFERENCE = "reference"
    L2 = "l2"
    PHI = "phi"


def _generalized_binomial(top: Fraction, j: int) -> Fraction:
    """binom(top, j) as a falling-factorial product over j!, exact for rational top."""
    num = Fraction(1)
    for i in range(j):
        num *= top - i
    return num / factorial(j)


# (x - 1)/2 and (x + 1)/2, the shifted variables of the binomial expansion.
_U = Polynomial((Fraction(-1, 2), Fraction(1, 2)))
_V = Polynomial((Fraction(1, 2), Fraction(1, 2)))


@lru_cache(maxsize=None)
def classical_jacobi(n: int, params: JacobiParams) -> Polynomial:
    """Degree-n Jacobi polynomial in the reference normalization, expanded.

    P_n(x) = sum_v binom(n+alpha, v) binom(n+beta, n-v) ((x-1)/2)^(n-v) ((x+1)/2)^v,
    so that P_n(1) = binom(n+alpha, n).  Generalized binomials are evaluated as
    falling-factorial products, which keeps non-integer rational parameters exact.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    upow = [Polynomial.one()]
    vpow = [Polynomial.one()]
    for _ in range(n):
        upow.append(upow[-1] * _U)
        vpow.append(vpow[-1] * _V)
    total = Polynomial.zero()
    for v in range(n + 1):
        c = _generalized_binomial(n + params.alpha, v) * _generalized_binomial(
            n + params.beta, n - v
        )
        if c != 0:
            total = total + c * (upow[n - v] * vpow[v])
    return total


@lru_cache(maxsize=None)
def _renormalized_poly(n: int) -> Polynomial:
    """Polynomial part of the degree-n (n >= 2) Sobolev-orthonormal member.

    sum_j binom(n-1, n-j) binom(n-1, j) ((x-1)/2)^j ((x+1)/2)^(n-j); both
    binomial upper indices equal n - 1, so the sum is symmetric in j <-> n-j.
    """
    upow = [Polynomial.one()]
    vpow = [Polynomial.one()]
    for _ in range(n):
        upow.append(upow[-1] * _U)
        vpow.append(vpow[-1] * _V)
    total = Polynomial.zero()
    for j in range(n + 1):
        c = _generalized_binomial(Fraction(n - 1), n - j) * _generalized_binomial(
            Fraction(n - 1), j
        )
        if c != 0:
            total = total + c * (upow[j] * vpow[n - j])
    return total


@lru_cache(maxsize=None)
def nonclassical_jacobi(n: int, norm: Normalization) -> ScaledPolynomial:
    """Degree-n member of the alpha = beta = -1 family in the requested normalization.

    PHI: degree 0 -> 1, degree 1 -> x/sqrt(3), degree n >= 2 -> the renormalized
    sum scaled by sqrt(4n - 2)/(n - 1).  L2: defined for n >= 2 only, with the
    scale fixed by the exact squared norm against (1 - x^2)^(-1).  REFERENCE:
    the classical construction at (-1, -1) (degree 1 is the zero function).
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if norm is Normalization.REFERENCE:
        return ScaledPolynomial.of(classical_jacobi(n, NONCLASSICAL))
    if norm is Normalization.PHI:
        if n == 0:
            return ScaledPolynomial(1, Polynomial.one())
        if n == 1:
            return ScaledPolynomial(Fraction(1, 3), Polynomial.x())
        return ScaledPolynomial(Fraction(4 * n - 2, (n - 1) ** 2), _renormalized_poly(n))
    # L2: degrees 0 and 1 lie outside the weighted space.
    if n < 2:
        raise UndefinedNormalization(
            f"degree-{n} member of the (-1,-1) family is not in the weighted L2 space"
        )
    poly = _renormalized_poly(n)
    norm_sq = integrate_weighted(poly * poly, -1)
    return ScaledPolynomial(1 / norm_sq, poly)


@lru_cache(maxsize=None)
def jacobi_family(n: int, params: JacobiParams, norm: Normalization) -> ScaledPolynomial:
    """Uniform accessor for classical and nonclassical members.

    Exact L2 normalization requires integer alpha, beta >= 0 (a polynomial
    weight with rational norms) or the nonclassical pair; PHI exists only for
    the nonclassical pair.
    """
    if params.is_nonclassical:
        return nonclassical_jacobi(n, norm)
    if norm is Normalization.REFERENCE:
        return ScaledPolynomial.of(classical_jacobi(n, params))
    if norm is Normalization.PHI:
        raise UndefinedNormalization(
            "the Sobolev normalization exists only for alpha = beta = -1"
        )
    if not params.is_nonnegative_integer_pair:
        raise UndefinedNormalization(
            f"exact L2 normalization needs integer alpha, beta >= 0, got "
            f"({params.alpha}, {params.beta})"
        )
    poly = classical_jacobi(n, params)
    norm_sq = integrate_jacobi_weight(poly * poly, int(params.alpha), int(params.beta))
    return ScaledPolynomial(1 / norm_sq, poly)


def derivative_coefficient_squared(n: int, j: int, params: JacobiParams) -> Fraction:
    """Squared coefficient linking the j-th derivative of the orthonormal P_n
    to the orthonormal P_{n-j} at shifted parameters:

        a(n, j)^2 = n!/(n-j)! * prod_{i=1..j} (alpha + beta + n + i),

    the rational value of the Gamma ratio Gamma(alpha+beta+n+1+j)/Gamma(alpha+beta+n+1).
    Returns 0 for j > n unconditionally.  Otherwise, when the ratio is anchored
    at a nonpositive integer no finite value is assigned and PoleInGammaRatio
    is raised; for alpha = beta = -1 the anchor n - 1 is nonpositive exactly
    when n <= 1, which with 1 <= j <= n means the single case n = j = 1.
    """
    if n < 0 or j < 0:
        raise ValueError("indices must be nonnegative")
    if j > n:
        return Fraction(0)
    if j == 0:
        return Fraction(1)
    anchor = params.alpha + params.beta + n + 1
    if anchor.denominator == 1 and anchor <= 0:
        raise PoleInGammaRatio(
            f"Gamma ratio anchored at nonpositive integer {anchor} "
            f"(n = {n}, alpha = {params.alpha}, beta = {params.beta})"
        )
    value = Fraction(factorial(n), factorial(n - j))
    for i in range(1, j + 1):
        value *= anchor + i - 1
    return value


def check_derivative_identity(n: int, j: int, params: JacobiParams) -> bool:
    """Exact check of d^j/dx^j P_n = a(n, j) P_{n-j} at shifted parameters,
    both sides in the L2-orthonormal normalization.

    For j > n both sides vanish.  Comparison is by squared forms with matching
    leading-coefficient signs.  Propagates UndefinedNormalization (family does
    not exist) and PoleInGammaRatio (coefficient undefined).
    """
    left = jacobi_family(n, params, Normalization.L2).derivative(j)
    a_sq = derivative_coefficient_squared(n, j, params)
    if a_sq == 0:
        return left.is_zero
    base = jacobi_family(n - j, params.shifted(j), Normalization.L2)
    right = ScaledPolynomial(a_sq * base.scale_sq, base.poly)
    return left.same_function(right)


def proportional_scale_squared(scaled: ScaledPolynomial, target: Polynomial) -> Fraction:
    """The squared constant c^2 with sqrt(scale_sq) * poly = c * target, exact.

    Raises NotProportional when the polynomials are not nonzero scalar
    multiples of each other.
    """
    if scaled.is_zero or target.is_zero:
        raise NotProportional("zero polynomial has no proportionality constant")
    pivot = next(i for i, c in enumerate(target.coeffs) if c != 0)
    ratio = scaled.poly.coeff(pivot) / target.coeffs[pivot]
    if ratio == 0 or scaled.poly != ratio * target:
        raise NotProportional(f"{scaled.poly} is not a scalar multiple of {target}")
    return scaled.scale_sq * ratio * ratio


def factorization_check(n: int) -> Fraction:
    """Verify the endpoint factorization of the degree-n nonclassical member.

    The Sobolev-normalized member of degree n >= 2 must be a nonzero multiple
    of (1 - x^2) P_{n-2}^{(1,1)}; returns the squared proportionality constant.
    """
    if n < 2:
        raise ValueError("factorization applies to degrees >= 2")
    tilde = nonclassical_jacobi(n, Normalization.PHI)
    base = ONE_MINUS_X2 * classical_jacobi(n - 2, JacobiParams(1, 1))
    return proportional_scale_squared(tilde, base)
