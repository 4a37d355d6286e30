"""Sequence representations and sequence-level transforms.

A sequence {lambda_n} enters the library either as a polynomial in n
(``SequenceSpec.from_polynomial``) or as an explicit finite prefix
(``SequenceSpec.from_values``, optionally flagged complete, meaning every
unlisted entry is exactly zero).  The transforms here are the binomial
inversion pair

    a_k = sum_{j<=k} (-1)^(k-j) C(k,j) lambda_j
    lambda_n = sum_k a_k C(n,k)

and the two test polynomials they feed:

    p(y) = sum_k C(k+alpha, k) a_k y^k          (Laguerre-basis test)
    Q(y) = sum_k a_k y^k / k!                   (monomial-basis test)

Q is the polynomial part of the exponential generating function of the
sequence: sum lambda_n x^n / n! = Q(x) e^x whenever lambda is a polynomial
in n, which is what makes the monomial-basis verdict decidable.  Explicit
prefixes are never extrapolated: any operation that needs unknown tail
values raises instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Optional, Tuple

from .ratpoly import RationalLike, UniPoly, generalized_binomial

POLY_KIND = "poly"
LIST_KIND = "list"

TRIVIAL = "trivial"
NONTRIVIAL = "nontrivial"
UNDETERMINED = "undetermined"


class SequenceSpec:
    """A real sequence given by a polynomial in n or by an explicit prefix."""

    __slots__ = ("kind", "poly", "values", "complete")

    def __init__(self, kind: str, poly: Optional[UniPoly] = None,
                 values: Tuple[Fraction, ...] = (), complete: bool = False):
        self.kind = kind
        self.poly = poly
        self.values = values
        self.complete = complete

    @classmethod
    def from_polynomial(cls, coeffs) -> "SequenceSpec":
        """lambda_n = P(n) where P has the given coefficients (or is a UniPoly)."""
        poly = coeffs if isinstance(coeffs, UniPoly) else UniPoly(coeffs, var="n")
        return cls(POLY_KIND, poly=poly)

    @classmethod
    def from_values(cls, values: Iterable[RationalLike], complete: bool = False) -> "SequenceSpec":
        """Explicit prefix lambda_0, lambda_1, ...; with complete=True the
        unlisted tail is exactly zero."""
        vals = tuple(Fraction(v) for v in values)
        if not vals:
            raise ValueError("explicit sequence needs at least one value")
        return cls(LIST_KIND, values=vals, complete=complete)

    @property
    def is_polynomial(self) -> bool:
        return self.kind == POLY_KIND

    def tail_known(self) -> bool:
        return self.kind == POLY_KIND or self.complete

    def known_length(self) -> Optional[int]:
        """Number of leading entries with known values; None when all known."""
        if self.tail_known():
            return None
        return len(self.values)

    def value(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("sequence index must be nonnegative")
        if self.kind == POLY_KIND:
            return self.poly(n)
        if n < len(self.values):
            return self.values[n]
        if self.complete:
            return Fraction(0)
        raise ValueError(f"insufficient prefix: lambda_{n} is unknown")

    def prefix(self, upto: int) -> Tuple[Fraction, ...]:
        return tuple(self.value(n) for n in range(upto + 1))

    def scaled(self, c: RationalLike) -> "SequenceSpec":
        c = Fraction(c)
        if self.kind == POLY_KIND:
            return SequenceSpec.from_polynomial(self.poly * c)
        return SequenceSpec(LIST_KIND, values=tuple(c * v for v in self.values),
                            complete=self.complete)

    def describe(self) -> str:
        if self.kind == POLY_KIND:
            return f"lambda_n = {self.poly}"
        tail = ", ..." if not self.complete else ""
        return "lambda = [" + ", ".join(str(v) for v in self.values) + f"]{tail}"

    def __eq__(self, other) -> bool:
        if not isinstance(other, SequenceSpec):
            return NotImplemented
        return (self.kind, self.poly, self.values, self.complete) == \
            (other.kind, other.poly, other.values, other.complete)

    def __hash__(self) -> int:
        return hash((self.kind, self.poly, self.values, self.complete))

    def __repr__(self) -> str:
        return f"SequenceSpec({self.describe()})"


@dataclass(frozen=True)
class DeltaCoefficients:
    """Binomial-inverted coefficients a_0, a_1, ...; exact_tail_known marks
    sources (polynomials in n) whose later coefficients are exactly zero."""

    values: Tuple[Fraction, ...]
    exact_tail_known: bool

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self.values):
            return self.values[k]
        if self.exact_tail_known:
            return Fraction(0)
        raise ValueError(f"insufficient prefix: a_{k} is unknown")


@dataclass(frozen=True)
class Triviality:
    """Whether a sequence vanishes outside two consecutive indices {k, k+1}."""

    status: str
    k: Optional[int] = None


def binomial_invert(s: SequenceSpec, upto: Optional[int] = None) -> DeltaCoefficients:
    """Alternating binomial transform of the sequence.

    For a polynomial sequence the transform terminates: the result has
    length deg P + 1 (or the requested length if larger) and an exactly-zero
    tail.  For explicit prefixes, upto defaults to the full prefix and may
    not exceed it.
    """
    if s.kind == POLY_KIND:
        top = len(s.poly.coeffs) - 1 if not s.poly.is_zero else 0
        if upto is not None:
            if upto < 0:
                raise ValueError("upto must be nonnegative")
            top = max(top, upto)
        lam = [s.poly(n) for n in range(top + 1)]
        tail_known = True
    else:
        if upto is None:
            upto = len(s.values) - 1 if not s.complete else len(s.values) + 1
        if upto < 0:
            raise ValueError("upto must be nonnegative")
        if not s.complete and upto >= len(s.values):
            raise ValueError("insufficient prefix for binomial inversion")
        lam = [s.value(n) for n in range(upto + 1)]
        tail_known = s.complete and upto >= len(s.values)
        top = upto
    a = []
    for k in range(top + 1):
        acc = Fraction(0)
        for j in range(k + 1):
            term = comb(k, j) * lam[j]
            acc += term if (k - j) % 2 == 0 else -term
        a.append(acc)
    if tail_known:
        while a and a[-1] == 0:
            a.pop()
        if not a:
            a = [Fraction(0)]
    return DeltaCoefficients(tuple(a), tail_known)


def lambda_from_delta(a: DeltaCoefficients, n: int) -> Fraction:
    """Inverse transform: lambda_n = sum_k a_k C(n, k)."""
    if n < 0:
        raise ValueError("sequence index must be nonnegative")
    if not a.exact_tail_known and n >= len(a.values):
        raise ValueError(f"insufficient prefix: a_{n} is unknown")
    acc = Fraction(0)
    for k in range(min(n, len(a.values) - 1) + 1):
        acc += a.values[k] * comb(n, k)
    return acc


def is_trivial(s: SequenceSpec) -> Triviality:
    """Detect sequences supported on two consecutive indices.

    A nonzero polynomial in n cannot vanish at all but two integers, so
    polynomial sequences are trivial exactly when P == 0.  An explicit prefix
    whose support fits inside some {k, k+1} is only *consistent* with
    triviality unless the list is flagged complete.
    """
    if s.kind == POLY_KIND:
        if s.poly.is_zero:
            return Triviality(TRIVIAL, 0)
        return Triviality(NONTRIVIAL)
    support = [n for n, v in enumerate(s.values) if v != 0]
    if support:
        fits = support[-1] - support[0] <= 1
        k = support[0]
    else:
        fits, k = True, 0
    if not fits:
        return Triviality(NONTRIVIAL)
    if s.complete:
        return Triviality(TRIVIAL, k)
    return Triviality(UNDETERMINED)


def _require_polynomial(s: SequenceSpec, what: str) -> None:
    if s.kind != POLY_KIND:
        raise ValueError(f"{what} requires polynomial-type sequence")


def build_p(s: SequenceSpec, alpha: RationalLike) -> UniPoly:
    """The Laguerre-basis test polynomial p(y) = sum_k C(k+alpha,k) a_k y^k."""
    alpha = Fraction(alpha)
    if alpha <= -1:
        raise ValueError("alpha out of range: must satisfy alpha > -1")
    _require_polynomial(s, "build_p")
    a = binomial_invert(s)
    coeffs = [generalized_binomial(alpha + k, k) * ak for k, ak in enumerate(a.values)]
    return UniPoly(coeffs, var="y")


def build_classical_Q(s: SequenceSpec) -> UniPoly:
    """The monomial-basis test polynomial Q(y) = sum_k a_k y^k / k!."""
    _require_polynomial(s, "build_classical_Q")
    a = binomial_invert(s)
    return UniPoly([ak / factorial(k) for k, ak in enumerate(a.values)], var="y")


def strs_coefficients(s: SequenceSpec, alpha: RationalLike, upto: int) -> list:
    """First upto+1 coefficients of the series

        (1+y)^(-alpha-1) * sum_n lambda_n C(n+alpha, n) (y/(1+y))^n

    computed with exact generalized-binomial expansions.  For polynomial
    sequences this reproduces the coefficients of build_p."""
    alpha = Fraction(alpha)
    if alpha <= -1:
        raise ValueError("alpha out of range: must satisfy alpha > -1")
    if upto < 0:
        raise ValueError("upto must be nonnegative")
    out = [Fraction(0)] * (upto + 1)
    for n in range(upto + 1):
        lam = s.value(n)  # raises on insufficient prefix
        if lam == 0:
            continue
        scale = lam * generalized_binomial(alpha + n, n)
        # y^n (1+y)^(-(n+alpha+1)) truncated at total order `upto`
        for m in range(upto - n + 1):
            out[n + m] += scale * generalized_binomial(-(alpha + n + 1), m)
    return out
