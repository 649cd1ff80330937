"""The Jacobi differential expression, its powers, inner products, and spectra.

For alpha = beta = -1 the expression is ell[y] = -(1 - x^2) y'' + k y with a
fixed shift k >= 0.  Its n-th composite power is evaluated through the
Lagrangian symmetric form

    ell^n[y] = (1 - x^2) * sum_{j=0}^{n} (-1)^j c_j(n, k) ((1 - x^2)^(j-1) y^(j))^(j),

whose j = 0 term collapses to c_0 y; this is the form that reproduces the
n-fold composition of ell and generates the left-definite inner products
(f, g)_n = sum_j c_j(n,k) * integral of f^(j) g^(j) (1 - x^2)^(j-1).

Three inner products are exposed:

* ``Classical(params)``  -- integral against (1 - x)^alpha (1 + x)^beta; for a
  -1 exponent both arguments must vanish at the corresponding endpoint.
* ``SobolevPhi()``       -- f(-1)g(-1)/2 + f(1)g(1)/2 + integral of f'g'.
* ``LeftDefinite(n, k)`` -- the n-th left-definite form above.

Inner products of ScaledPolynomials close in the Surd type: a rational
bilinear value times sqrt of the product of the two squared scales.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .algebra import (
    ONE_MINUS_X2,
    NotDivisible,
    Polynomial,
    RationalLike,
    ScaledPolynomial,
    Surd,
    as_fraction,
    integrate_jacobi_weight,
    integrate_weighted,
)
from .jacobi import (
    JacobiParams,
    NONCLASSICAL,
    Normalization,
    derivative_coefficient_squared,
    jacobi_family,
)
from .stirling import composite_coefficients

__all__ = [
    "NotInWeightedSpace",
    "MismatchWithClosedForm",
    "Classical",
    "SobolevPhi",
    "LeftDefinite",
    "InnerProductSpec",
    "OperatorTag",
    "SpectrumSpec",
    "GramMatrix",
    "apply_ell",
    "apply_ell_power",
    "inner_product",
    "derivative_orthogonality_value",
    "decompose_w",
    "gram_matrix",
    "operator_matrix",
    "verify_lagrange_identity",
    "verify_dirichlet_identity",
    "spectrum",
]


class NotInWeightedSpace(ArithmeticError):
    """An argument fails the endpoint-vanishing condition a singular weight requires."""


class MismatchWithClosedForm(ArithmeticError):
    """An exactly integrated value disagrees with its closed form."""


@dataclass(frozen=True)
class Classical:
    """Weighted-L2 pairing against (1 - x)^alpha (1 + x)^beta (integer exponents)."""

    params: JacobiParams


@dataclass(frozen=True)
class SobolevPhi:
    """Boundary terms at +-1 (weight 1/2 each) plus the Dirichlet integral of f'g'."""


@dataclass(frozen=True, init=False)
class LeftDefinite:
    """The n-th left-definite pairing with shift k >= 0."""

    n: int
    k: Fraction

    def __init__(self, n: int, k: RationalLike):
        if n < 1:
            raise ValueError("left-definite order must be >= 1")
        kf = as_fraction(k)
        if kf < 0:
            raise ValueError("the shift k must be nonnegative")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", kf)


InnerProductSpec = Classical | SobolevPhi | LeftDefinite


class OperatorTag(Enum):
    A = "A"    # weighted-L2 self-adjoint realization, eigenvalues from degree 2
    BN = "Bn"  # n-th left-definite realization, same spectrum as A
    T = "T"    # Sobolev-space realization, eigenvalues from degree 0


@dataclass(frozen=True, init=False)
class SpectrumSpec:
    """Which operator's spectrum, at which shift k (Bn also carries its order)."""

    operator: OperatorTag
    k: Fraction
    power: int | None

    def __init__(self, operator: OperatorTag, k: RationalLike, power: int | None = None):
        kf = as_fraction(k)
        if kf < 0:
            raise ValueError("the shift k must be nonnegative")
        if operator is OperatorTag.BN:
            if power is None or power < 1:
                raise ValueError("Bn needs a left-definite order power >= 1")
        elif power is not None:
            raise ValueError("only Bn carries a left-definite order")
        object.__setattr__(self, "operator", operator)
        object.__setattr__(self, "k", kf)
        object.__setattr__(self, "power", power)


@dataclass(frozen=True)
class GramMatrix:
    """Matrix of pairwise inner products of a family, entries exact Surds."""

    size: int
    degrees: tuple[int, ...]
    entries: tuple[tuple[Surd, ...], ...]
    ip_spec: InnerProductSpec
    family_tag: Normalization

    def entry(self, i: int, j: int) -> Surd:
        return self.entries[i][j]

    def diagonal(self) -> tuple[Surd, ...]:
        return tuple(self.entries[i][i] for i in range(self.size))

    def is_diagonal(self) -> bool:
        return all(
            self.entries[i][j] == Surd.zero()
            for i in range(self.size)
            for j in range(self.size)
            if i != j
        )

    def is_identity(self) -> bool:
        one = Surd.from_rational(1)
        return self.is_diagonal() and all(d == one for d in self.diagonal())


def _as_scaled(f: Polynomial | ScaledPolynomial) -> ScaledPolynomial:
    return f if isinstance(f, ScaledPolynomial) else ScaledPolynomial.of(f)


def _ell_poly(p: Polynomial, k: Fraction, params: JacobiParams) -> Polynomial:
    """-(1-x^2) p'' + (alpha - beta + (alpha+beta+2) x) p' + k p, exact."""
    first = Polynomial(
        (params.alpha - params.beta, params.alpha + params.beta + 2)
    )
    return -1 * (ONE_MINUS_X2 * p.derivative(2)) + first * p.derivative() + k * p


def apply_ell(
    f: Polynomial | ScaledPolynomial,
    k: RationalLike,
    params: JacobiParams = NONCLASSICAL,
):
    """Apply the differential expression; the scale factor passes through unchanged."""
    kf = as_fraction(k)
    if isinstance(f, Polynomial):
        return _ell_poly(f, kf, params)
    return ScaledPolynomial(f.scale_sq, _ell_poly(f.poly, kf, params))


def apply_ell_power(
    f: Polynomial | ScaledPolynomial, n: int, k: RationalLike
):
    """The n-th composite power of the nonclassical expression, via c_j(n, k).

    Evaluates (1-x^2) * sum_j (-1)^j c_j ((1-x^2)^(j-1) y^(j))^(j) exactly;
    equal to n-fold application of ``apply_ell`` at alpha = beta = -1.
    """
    kf = as_fraction(k)
    scaled = _as_scaled(f)
    coeffs = composite_coefficients(n, kf).c
    total = Polynomial.zero()
    for j, cj in enumerate(coeffs):
        if cj == 0:
            continue
        if j == 0:
            term = scaled.poly
        else:
            inner = (ONE_MINUS_X2 ** (j - 1)) * scaled.poly.derivative(j)
            term = ONE_MINUS_X2 * inner.derivative(j)
        total = total + (cj if j % 2 == 0 else -cj) * term
    result = ScaledPolynomial(scaled.scale_sq, total)
    return result.poly if isinstance(f, Polynomial) else result


def _require_vanishing(p: Polynomial, at: int, context: str) -> None:
    if p(Fraction(at)) != 0:
        raise NotInWeightedSpace(
            f"{context}: argument does not vanish at x = {at}, so it lies outside "
            f"the weighted space"
        )


def _classical_bilinear(p: Polynomial, q: Polynomial, params: JacobiParams) -> Fraction:
    if params.alpha.denominator != 1 or params.beta.denominator != 1:
        raise ValueError("exact classical pairing needs integer alpha, beta >= -1")
    a, b = int(params.alpha), int(params.beta)
    if a == -1:
        _require_vanishing(p, 1, "classical pairing")
        _require_vanishing(q, 1, "classical pairing")
    if b == -1:
        _require_vanishing(p, -1, "classical pairing")
        _require_vanishing(q, -1, "classical pairing")
    try:
        return integrate_jacobi_weight(p * q, a, b)
    except NotDivisible as exc:  # pragma: no cover - endpoint checks above catch this
        raise NotInWeightedSpace(str(exc)) from exc


def _sobolev_bilinear(p: Polynomial, q: Polynomial) -> Fraction:
    boundary = (
        p(Fraction(-1)) * q(Fraction(-1)) + p(Fraction(1)) * q(Fraction(1))
    ) / 2
    return boundary + integrate_weighted(p.derivative() * q.derivative(), 0)


def _left_definite_bilinear(
    p: Polynomial, q: Polynomial, order: int, k: Fraction
) -> Fraction:
    coeffs = composite_coefficients(order, k).c
    total = Fraction(0)
    dp, dq = p, q
    for j, cj in enumerate(coeffs):
        if j > 0:
            dp, dq = dp.derivative(), dq.derivative()
        if cj == 0:
            continue
        if j == 0:
            for at in (1, -1):
                _require_vanishing(p, at, "left-definite pairing (j = 0 term)")
                _require_vanishing(q, at, "left-definite pairing (j = 0 term)")
            total += cj * integrate_weighted(dp * dq, -1)
        else:
            total += cj * integrate_weighted(dp * dq, j - 1)
    return total


def inner_product(
    f: Polynomial | ScaledPolynomial,
    g: Polynomial | ScaledPolynomial,
    spec: InnerProductSpec,
) -> Surd:
    """Exact inner product; the result is (bilinear value) * sqrt(s_f * s_g)."""
    fs, gs = _as_scaled(f), _as_scaled(g)
    match spec:
        case Classical(params=params):
            value = _classical_bilinear(fs.poly, gs.poly, params)
        case SobolevPhi():
            value = _sobolev_bilinear(fs.poly, gs.poly)
        case LeftDefinite(n=order, k=k):
            value = _left_definite_bilinear(fs.poly, gs.poly, order, k)
        case _:
            raise TypeError(f"unknown inner product spec {spec!r}")
    return Surd(value, fs.scale_sq * gs.scale_sq)


def derivative_orthogonality_value(
    n: int, r: int, j: int, params: JacobiParams
) -> Fraction:
    """Pair the j-th derivatives of orthonormal P_n and P_r against the
    j-shifted weight and check the closed form a(n, j)^2 * delta_{n,r}.

    Both the exact integral and the closed form are computed; disagreement
    raises MismatchWithClosedForm, otherwise the common value is returned.
    """
    shifted = params.shifted(j)
    if not shifted.is_nonnegative_integer_pair:
        raise ValueError(
            "exact mode needs integer parameters with alpha + j, beta + j >= 0"
        )
    pn = jacobi_family(n, params, Normalization.L2).derivative(j)
    pr = jacobi_family(r, params, Normalization.L2).derivative(j)
    lhs = Surd(
        integrate_jacobi_weight(
            pn.poly * pr.poly, int(shifted.alpha), int(shifted.beta)
        ),
        pn.scale_sq * pr.scale_sq,
    )
    rhs = derivative_coefficient_squared(n, j, params) if n == r else Fraction(0)
    if not lhs.is_rational or lhs.to_fraction() != rhs:
        raise MismatchWithClosedForm(
            f"integral {lhs} differs from closed form {rhs} at "
            f"(n={n}, r={r}, j={j}, alpha={params.alpha}, beta={params.beta})"
        )
    return rhs


def decompose_w(f: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Split f = f1 + f2 with f1 vanishing at +-1 and f2 of degree <= 1.

    f2 interpolates f at the endpoints: f2 = (f(1)-f(-1))/2 * x + (f(1)+f(-1))/2.
    """
    at1, atm1 = f(Fraction(1)), f(Fraction(-1))
    f2 = Polynomial(((at1 + atm1) / 2, (at1 - atm1) / 2))
    return f - f2, f2


def _family_degrees(
    params: JacobiParams, tag: Normalization, max_degree: int
) -> tuple[int, ...]:
    start = 2 if (params.is_nonclassical and tag is Normalization.L2) else 0
    return tuple(range(start, max_degree + 1))


def gram_matrix(
    max_degree: int, spec: InnerProductSpec, family_tag: Normalization
) -> GramMatrix:
    """Gram matrix of the family (degrees up to max_degree) under the pairing.

    The family is classical at the pairing's parameters for a Classical spec
    and the nonclassical one otherwise; the L2-orthonormal nonclassical family
    starts at degree 2.
    """
    params = spec.params if isinstance(spec, Classical) else NONCLASSICAL
    degrees = _family_degrees(params, family_tag, max_degree)
    fam = [jacobi_family(d, params, family_tag) for d in degrees]
    entries = tuple(
        tuple(inner_product(fi, fj, spec) for fj in fam) for fi in fam
    )
    for i, row in enumerate(entries):
        if not row[i].is_rational or row[i].to_fraction() <= 0:
            raise ValueError(
                f"Gram diagonal entry {row[i]} at degree {degrees[i]} is not positive"
            )
    return GramMatrix(
        size=len(fam),
        degrees=degrees,
        entries=entries,
        ip_spec=spec,
        family_tag=family_tag,
    )


def operator_matrix(max_degree: int, spec: SpectrumSpec) -> GramMatrix:
    """Matrix <ell[p_i], p_j> in the inner product that matches the operator.

    T uses the Sobolev-orthonormal family (degrees from 0) paired by phi;
    A uses the L2-orthonormal family (degrees from 2) paired in the weighted
    space; Bn pairs the same family with the n-th left-definite form, where
    the eigen-relation yields diagonal entries (m(m-1)+k)^(n+1).
    """
    if spec.operator is OperatorTag.T:
        tag, ip = Normalization.PHI, SobolevPhi()
    elif spec.operator is OperatorTag.A:
        tag, ip = Normalization.L2, Classical(NONCLASSICAL)
    else:
        tag, ip = Normalization.L2, LeftDefinite(spec.power, spec.k)
    degrees = _family_degrees(NONCLASSICAL, tag, max_degree)
    fam = [jacobi_family(d, NONCLASSICAL, tag) for d in degrees]
    images = [apply_ell(p, spec.k) for p in fam]
    entries = tuple(
        tuple(inner_product(img, pj, ip) for pj in fam) for img in images
    )
    return GramMatrix(
        size=len(fam),
        degrees=degrees,
        entries=entries,
        ip_spec=ip,
        family_tag=tag,
    )


def verify_lagrange_identity(
    f: Polynomial, g: Polynomial, k: RationalLike
) -> bool:
    """Polynomial form of Green's formula, cleared of the singular weight:

        ell[f] g - f ell[g] = (1 - x^2) (f g' - f' g)'.

    The k-terms cancel on the left; the identity holds for all polynomials.
    """
    kf = as_fraction(k)
    lhs = apply_ell(f, kf) * g - f * apply_ell(g, kf)
    wronskian = f * g.derivative() - f.derivative() * g
    return (lhs - ONE_MINUS_X2 * wronskian.derivative()).is_zero


def verify_dirichlet_identity(
    f: Polynomial, g: Polynomial, k: RationalLike
) -> bool:
    """Weight-cleared integrand identity behind the Dirichlet formula:

        ell[f] g = (1 - x^2) (f' g' - (f' g)') + k f g.
    """
    kf = as_fraction(k)
    lhs = apply_ell(f, kf) * g
    rhs = (
        ONE_MINUS_X2
        * (f.derivative() * g.derivative() - (f.derivative() * g).derivative())
        + kf * (f * g)
    )
    return (lhs - rhs).is_zero


def spectrum(spec: SpectrumSpec, count: int) -> list[Fraction]:
    """First ``count`` eigenvalues, in increasing index.

    A and Bn: m(m-1) + k for m = 2, 3, ...; T: n(n-1) + k for n = 0, 1, 2, ...
    (for T the value k appears at both index 0 and index 1).
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if spec.operator is OperatorTag.T:
        start = 0
    else:
        start = 2
    return [Fraction(m * (m - 1)) + spec.k for m in range(start, start + count)]
