"""Generalized Laguerre and Hermite polynomials and exact basis conversion.

The Laguerre family L_n^(alpha) (alpha > -1) is built from its closed form

    L_n^(alpha)(x) = sum_{k=0}^{n} C(n+alpha, n-k) (-x)^k / k!

with the generalized binomial evaluated as an exact rational product; the
Hermite family comes from the three-term recurrence

    H_0 = 1,  H_1 = 2x,  H_{n+1} = 2x H_n - 2n H_{n-1}.

Conversion between the monomial basis and either family is triangular
back-substitution, so round trips are exact at every degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Optional, Tuple

from .ratpoly import RationalLike, UniPoly, generalized_binomial

MONOMIAL_KIND = "monomial"
LAGUERRE_KIND = "laguerre"
HERMITE_KIND = "hermite"

_KINDS = (MONOMIAL_KIND, LAGUERRE_KIND, HERMITE_KIND)


@dataclass(frozen=True)
class BasisId:
    """A polynomial basis: monomial, Laguerre(alpha) with alpha > -1, or Hermite."""

    kind: str
    alpha: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown basis kind {self.kind!r}")
        if self.kind == LAGUERRE_KIND:
            if self.alpha is None:
                raise ValueError("laguerre basis requires alpha")
            object.__setattr__(self, "alpha", Fraction(self.alpha))
            if self.alpha <= -1:
                raise ValueError("alpha out of range: must satisfy alpha > -1")
        elif self.alpha is not None:
            raise ValueError(f"{self.kind} basis takes no alpha parameter")

    def describe(self) -> str:
        if self.kind == LAGUERRE_KIND:
            return f"laguerre(alpha={self.alpha})"
        return self.kind


MONOMIAL = BasisId(MONOMIAL_KIND)
HERMITE = BasisId(HERMITE_KIND)


def laguerre(alpha: RationalLike) -> BasisId:
    return BasisId(LAGUERRE_KIND, Fraction(alpha))


@dataclass(frozen=True)
class BasisExpansion:
    """Coefficients of a polynomial in a named basis; coefficients[n] is the
    coefficient of basis element n, with trailing zeros stripped."""

    basis: BasisId
    coefficients: Tuple[Fraction, ...]

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coefficients]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coefficients", tuple(cs))

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def coefficient(self, n: int) -> Fraction:
        if 0 <= n < len(self.coefficients):
            return self.coefficients[n]
        return Fraction(0)


@lru_cache(maxsize=None)
def laguerre_polynomial(n: int, alpha: Fraction) -> UniPoly:
    """The generalized Laguerre polynomial of degree n with parameter alpha."""
    alpha = Fraction(alpha)
    if alpha <= -1:
        raise ValueError("alpha out of range: must satisfy alpha > -1")
    if n < 0:
        raise ValueError("degree must be nonnegative")
    coeffs = []
    for k in range(n + 1):
        coeffs.append(generalized_binomial(alpha + n, n - k) * Fraction((-1) ** k, factorial(k)))
    return UniPoly(coeffs, var="x")


@lru_cache(maxsize=None)
def hermite_polynomial(n: int) -> UniPoly:
    """The physicists' Hermite polynomial of degree n."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        return UniPoly((1,), var="x")
    if n == 1:
        return UniPoly((0, 2), var="x")
    prev, cur = hermite_polynomial(n - 2), hermite_polynomial(n - 1)
    x2 = UniPoly((0, 2), var="x")
    return x2 * cur - (2 * (n - 1)) * prev


def basis_polynomial(basis: BasisId, n: int) -> UniPoly:
    if basis.kind == MONOMIAL_KIND:
        return UniPoly([0] * n + [1], var="x")
    if basis.kind == LAGUERRE_KIND:
        return laguerre_polynomial(n, basis.alpha)
    return hermite_polynomial(n)


@lru_cache(maxsize=None)
def _monomial_expansion(basis: BasisId, n: int) -> Tuple[Fraction, ...]:
    """Expansion of x**n in the basis, by triangular back-substitution."""
    work = [Fraction(0)] * (n + 1)
    work[n] = Fraction(1)
    out = [Fraction(0)] * (n + 1)
    for m in range(n, -1, -1):
        pm = basis_polynomial(basis, m)
        c = work[m] / pm.coeffs[m]
        out[m] = c
        if c:
            for k, b in enumerate(pm.coeffs):
                work[k] -= c * b
    return tuple(out)


def expand_in_basis(p: UniPoly, basis: BasisId) -> BasisExpansion:
    """Exact coefficients of p in the given basis."""
    if p.is_zero:
        return BasisExpansion(basis, ())
    if basis.kind == MONOMIAL_KIND:
        return BasisExpansion(basis, p.coeffs)
    out = [Fraction(0)] * len(p.coeffs)
    for n, c in enumerate(p.coeffs):
        if c:
            row = _monomial_expansion(basis, n)
            for k, r in enumerate(row):
                out[k] += c * r
    return BasisExpansion(basis, out)


def assemble_from_basis(e: BasisExpansion) -> UniPoly:
    """Exact inverse of expand_in_basis: sum of coefficients times basis polynomials."""
    out = UniPoly((), var="x")
    for n, c in enumerate(e.coefficients):
        if c:
            out = out + basis_polynomial(e.basis, n) * c
    return out
