"""Exact rational scalars, dense polynomials, and weighted integrals on [-1, 1].

The scalar field is ``fractions.Fraction``; every operation in this module is
exact.  The central integral is

    integrate_weighted(p, m) = integral of p(x) * (1 - x^2)^m over [-1, 1]

for integer m >= -1.  The m = -1 case is only defined when (1 - x^2) divides p,
which is exactly membership of the polynomial in the weighted L^2 space with
weight (1 - x^2)^(-1).

Square roots of rationals enter through normalization constants; they are kept
closed under multiplication by the ``Surd`` type (a rational coefficient times
the square root of a rational) and by ``ScaledPolynomial`` (a polynomial times
the square root of a positive rational).

All values are immutable and all functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Union

__all__ = [
    "NotDivisible",
    "Polynomial",
    "ScaledPolynomial",
    "Surd",
    "ONE",
    "X",
    "ONE_MINUS_X2",
    "ZERO",
    "as_fraction",
    "divide_by_weight",
    "integrate_weighted",
    "integrate_jacobi_weight",
]

RationalLike = Union[Fraction, int, str]


class NotDivisible(ArithmeticError):
    """Requested division by a weight factor that does not divide the polynomial."""


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce ints, 'p/q' strings, and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


@dataclass(frozen=True, init=False)
class Polynomial:
    """Dense polynomial over Fraction in the monomial basis.

    ``coeffs[i]`` is the coefficient of x^i.  The tuple carries no trailing
    zeros; the zero polynomial is the empty tuple.
    """

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((1,))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, power: int, coeff: RationalLike = 1) -> "Polynomial":
        return cls([0] * power + [as_fraction(coeff)])

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return self.coeffs[-1]

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if self.is_zero or other.is_zero:
                return Polynomial()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return Polynomial(out)
        c = as_fraction(other)
        return Polynomial([c * a for a in self.coeffs])

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.one()
        for _ in range(n):
            result = result * self
        return result

    def derivative(self, order: int = 1) -> "Polynomial":
        p = self
        for _ in range(order):
            p = Polynomial([i * c for i, c in enumerate(p.coeffs)][1:])
        return p

    def __call__(self, x):
        """Evaluate by Horner's rule; exact for Fraction x, float for float x."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reflected(self) -> "Polynomial":
        """Return p(-x)."""
        return Polynomial([(-1) ** i * c for i, c in enumerate(self.coeffs)])

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                term = str(c)
            elif i == 1:
                term = "x" if c == 1 else ("-x" if c == -1 else f"{c}*x")
            else:
                term = f"x^{i}" if c == 1 else (f"-x^{i}" if c == -1 else f"{c}*x^{i}")
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += " - " + term[1:] if term.startswith("-") else " + " + term
        return out


ZERO = Polynomial()
ONE = Polynomial.one()
X = Polynomial.x()
ONE_MINUS_X2 = Polynomial((1, 0, -1))

_WEIGHT_POWERS: dict[int, Polynomial] = {0: ONE}


def _one_minus_x2_power(m: int) -> Polynomial:
    if m not in _WEIGHT_POWERS:
        _WEIGHT_POWERS[m] = _one_minus_x2_power(m - 1) * ONE_MINUS_X2
    return _WEIGHT_POWERS[m]


def _div_one_minus_x2(p: Polynomial) -> Polynomial:
    """Exact quotient p / (1 - x^2); raises NotDivisible on a nonzero remainder."""
    if p.is_zero:
        return p
    d = p.degree
    if d < 2:
        raise NotDivisible(f"degree {d} polynomial is not divisible by (1 - x^2)")
    # p_i = q_i - q_{i-2}; solve top-down.
    q = [Fraction(0)] * (d - 1)
    q[d - 2] = -p.coeffs[d]
    if d - 3 >= 0:
        q[d - 3] = -p.coeffs[d - 1]
    for i in range(d - 2, 1, -1):
        q[i - 2] = q[i] - p.coeffs[i]
    r1 = q[1] if d - 1 >= 2 else Fraction(0)
    if p.coeff(1) != r1 or p.coeff(0) != q[0]:
        raise NotDivisible("polynomial does not vanish at both x = 1 and x = -1")
    return Polynomial(q)


def _div_one_minus_x(p: Polynomial) -> Polynomial:
    """Exact quotient p / (1 - x); requires p(1) = 0."""
    if p.is_zero:
        return p
    d = p.degree
    if d < 1:
        raise NotDivisible("nonzero constant is not divisible by (1 - x)")
    q = [Fraction(0)] * d
    q[d - 1] = -p.coeffs[d]
    for i in range(d - 1, 0, -1):
        q[i - 1] = q[i] - p.coeffs[i]
    if p.coeffs[0] != q[0]:
        raise NotDivisible("polynomial does not vanish at x = 1")
    return Polynomial(q)


def _div_one_plus_x(p: Polynomial) -> Polynomial:
    """Exact quotient p / (1 + x); requires p(-1) = 0."""
    if p.is_zero:
        return p
    d = p.degree
    if d < 1:
        raise NotDivisible("nonzero constant is not divisible by (1 + x)")
    q = [Fraction(0)] * d
    q[d - 1] = p.coeffs[d]
    for i in range(d - 1, 0, -1):
        q[i - 1] = p.coeffs[i] - q[i]
    if p.coeffs[0] != q[0]:
        raise NotDivisible("polynomial does not vanish at x = -1")
    return Polynomial(q)


def divide_by_weight(p: Polynomial, m: int) -> Polynomial:
    """Exact quotient p / (1 - x^2)^m for m >= 0.

    Raises NotDivisible when p does not vanish to order m at both endpoints.
    The quotient is verified by re-multiplication.
    """
    if m < 0:
        raise ValueError("m must be a nonnegative integer")
    q = p
    for _ in range(m):
        q = _div_one_minus_x2(q)
    if q * _one_minus_x2_power(m) != p:
        raise AssertionError("weight division failed re-multiplication check")
    return q


def integrate_weighted(p: Polynomial, m: int) -> Fraction:
    """Exact value of the integral of p(x) (1 - x^2)^m over [-1, 1], m >= -1.

    Uses the closed form: the integral of x^(2i) is 2/(2i+1) and odd powers
    integrate to zero.  For m = -1 the polynomial must be divisible by
    (1 - x^2) (NotDivisible otherwise).
    """
    if m < -1:
        raise ValueError("weight exponent must be >= -1")
    if m == -1:
        return integrate_weighted(divide_by_weight(p, 1), 0)
    q = p * _one_minus_x2_power(m)
    total = Fraction(0)
    for i in range(0, len(q.coeffs), 2):
        total += q.coeffs[i] * Fraction(2, i + 1)
    return total


def integrate_jacobi_weight(p: Polynomial, a: int, b: int) -> Fraction:
    """Exact integral of p(x) (1 - x)^a (1 + x)^b over [-1, 1] for integer a, b >= -1.

    A negative exponent requires the corresponding linear factor to divide p.
    """
    if a < -1 or b < -1:
        raise ValueError("weight exponents must be >= -1")
    q = p
    if a == -1:
        q = _div_one_minus_x(q)
        a = 0
    if b == -1:
        q = _div_one_plus_x(q)
        b = 0
    q = q * (Polynomial((1, -1)) ** a) * (Polynomial((1, 1)) ** b)
    return integrate_weighted(q, 0)


# Primes whose squares are pulled out of radicands; any remaining perfect
# square is caught by the isqrt trial.
_SQUARE_TRIAL_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
    53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
)


def _extract_square(n: int) -> tuple[int, int]:
    """Split n >= 1 as root^2 * rest with rest free of small square factors."""
    root = 1
    for p in _SQUARE_TRIAL_PRIMES:
        pp = p * p
        if pp > n:
            break
        while n % pp == 0:
            n //= pp
            root *= p
    s = isqrt(n)
    if s * s == n:
        root *= s
        n = 1
    return root, n


@dataclass(frozen=True)
class Surd:
    """A scalar coeff * sqrt(radicand) with coeff, radicand rational, radicand >= 0.

    Canonical form: a zero value is (0, 1); otherwise the radicand is a
    positive integer with square factors absorbed into the coefficient (the
    denominator is rationalized).  Equality on canonical forms is decidable
    componentwise.
    """

    coeff: Fraction
    radicand: Fraction

    def __post_init__(self):
        c = as_fraction(self.coeff)
        r = as_fraction(self.radicand)
        if r < 0:
            raise ValueError("radicand must be nonnegative")
        if c == 0 or r == 0:
            c, r = Fraction(0), Fraction(1)
        else:
            num_root, num_rest = _extract_square(r.numerator)
            den_root, den_rest = _extract_square(r.denominator)
            # sqrt(num/den) = (num_root / (den_root * den_rest)) * sqrt(num_rest * den_rest)
            c *= Fraction(num_root, den_root * den_rest)
            r = Fraction(num_rest * den_rest)
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "radicand", r)

    @classmethod
    def from_rational(cls, value: RationalLike) -> "Surd":
        return cls(as_fraction(value), Fraction(1))

    @classmethod
    def zero(cls) -> "Surd":
        return cls(Fraction(0), Fraction(1))

    @property
    def is_rational(self) -> bool:
        return self.radicand == 1

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.coeff

    def __mul__(self, other: "Surd") -> "Surd":
        if not isinstance(other, Surd):
            return NotImplemented
        return Surd(self.coeff * other.coeff, self.radicand * other.radicand)

    def __float__(self) -> float:
        return float(self.coeff) * float(self.radicand) ** 0.5

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.coeff)
        if self.coeff == 1:
            return f"sqrt({self.radicand})"
        return f"{self.coeff}*sqrt({self.radicand})"


@dataclass(frozen=True, init=False)
class ScaledPolynomial:
    """The function sqrt(scale_sq) * poly(x) with scale_sq a positive rational.

    Houses orthonormal families whose normalization constants are square roots
    of rationals.  The zero function is pinned to scale_sq = 1 so equality
    tests never meet 0 * sqrt(0).
    """

    scale_sq: Fraction
    poly: Polynomial

    def __init__(self, scale_sq: RationalLike, poly: Polynomial):
        s = as_fraction(scale_sq)
        if poly.is_zero:
            s = Fraction(1)
        elif s <= 0:
            raise ValueError("scale_sq must be positive")
        object.__setattr__(self, "scale_sq", s)
        object.__setattr__(self, "poly", poly)

    @classmethod
    def of(cls, poly: Polynomial) -> "ScaledPolynomial":
        return cls(Fraction(1), poly)

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    @property
    def degree(self) -> int:
        return self.poly.degree

    def derivative(self, order: int = 1) -> "ScaledPolynomial":
        return ScaledPolynomial(self.scale_sq, self.poly.derivative(order))

    def value_at(self, x: RationalLike) -> Surd:
        return Surd(self.poly(as_fraction(x)), self.scale_sq)

    def same_function(self, other: "ScaledPolynomial") -> bool:
        """Exact equality of the represented functions.

        Compares s1 * (q1 * q1) with s2 * (q2 * q2) coefficientwise, plus the
        sign of the leading coefficients, which determines the square roots.
        """
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        if (self.poly.leading > 0) != (other.poly.leading > 0):
            return False
        return self.scale_sq * (self.poly * self.poly) == other.scale_sq * (
            other.poly * other.poly
        )

    def __str__(self) -> str:
        if self.scale_sq == 1:
            return str(self.poly)
        return f"sqrt({self.scale_sq}) * ({self.poly})"
