"""Operator symbols and the stability machinery behind the classifiers.

The symbol of a linear operator T is the generating function
sum_n (-1)^n T(x^n) y^n / n!.  For a diagonal operator in a Laguerre basis it
factors as e^{-xy} times a bivariate polynomial, which this module builds in
two independent ways:

* ``symbol_basis_form``: sum_n a_n y^n L_n^(alpha)(xy + x) over the binomial
  transform a of the sequence;
* ``symbol_p_form``: sum_k p^(k)(y) (-x y (y+1))^k / ((alpha+1)...(alpha+k) k!)
  over the derivatives of the test polynomial p.

For a polynomial-type sequence both sums terminate and agree exactly; the
exponential prefactor is never materialized.  The Hermite symbol is the
y-truncation of e^{y^2/4} sum_k lambda_k H_k(x) (-y)^k / (2^k k!), and the
monomial symbol is Q(-xy) for the generating polynomial Q.

The stability side implements Wronskians, interlacing / proper position
(f << g iff the zeros interlace and f'g - fg' <= 0 on R, equivalently g + if
has no zero in the open upper half-plane), and the degree-one pencil
p(y) - x q(y) with q = y p + y(y+1) p'/(1+alpha) whose stability is the
necessary condition met by every accepted Laguerre sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Optional, Tuple

from .orthobasis import BasisId, MONOMIAL, HERMITE, hermite_polynomial, laguerre, laguerre_polynomial
from .ratpoly import (
    RationalLike,
    SIGN_NONPOSITIVE,
    SIGN_ZERO,
    UniPoly,
    count_real_roots,
    is_real_rooted,
    isolate_real_roots,
    poly_gcd,
    sign_semidefinite_on_reals,
    square_free_part,
)
from .seqmodel import SequenceSpec, binomial_invert, build_classical_Q, build_p


class BiPoly:
    """Sparse exact bivariate polynomial: {(x_degree, y_degree): coefficient}."""

    __slots__ = ("grid",)

    def __init__(self, grid: Optional[Dict[Tuple[int, int], RationalLike]] = None):
        cleaned = {}
        if grid:
            for (dx, dy), c in grid.items():
                c = Fraction(c)
                if c:
                    cleaned[(int(dx), int(dy))] = c
        self.grid: Dict[Tuple[int, int], Fraction] = cleaned

    @classmethod
    def constant(cls, c: RationalLike) -> "BiPoly":
        return cls({(0, 0): Fraction(c)})

    @classmethod
    def from_unipoly(cls, p: UniPoly, axis: str) -> "BiPoly":
        """Embed a univariate polynomial along the x or y axis."""
        if axis not in ("x", "y"):
            raise ValueError("axis must be 'x' or 'y'")
        if axis == "x":
            return cls({(k, 0): c for k, c in enumerate(p.coeffs)})
        return cls({(0, k): c for k, c in enumerate(p.coeffs)})

    @property
    def is_zero(self) -> bool:
        return not self.grid

    def coefficient(self, dx: int, dy: int) -> Fraction:
        return self.grid.get((dx, dy), Fraction(0))

    def y_degree(self) -> int:
        return max((dy for _, dy in self.grid), default=-1)

    def x_degree(self) -> int:
        return max((dx for dx, _ in self.grid), default=-1)

    def terms(self):
        """Deterministic term order: by y-degree, then x-degree."""
        for (dx, dy) in sorted(self.grid, key=lambda k: (k[1], k[0])):
            yield dx, dy, self.grid[(dx, dy)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.grid == other.grid

    def __hash__(self) -> int:
        return hash(frozenset(self.grid.items()))

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.grid)
        for key, c in other.grid.items():
            out[key] = out.get(key, Fraction(0)) + c
        return BiPoly(out)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (other * Fraction(-1))

    def __mul__(self, other) -> "BiPoly":
        if isinstance(other, (int, Fraction)):
            return BiPoly({k: c * other for k, c in self.grid.items()})
        if not isinstance(other, BiPoly):
            return NotImplemented
        out: Dict[Tuple[int, int], Fraction] = {}
        for (ax, ay), ac in self.grid.items():
            for (bx, by), bc in other.grid.items():
                key = (ax + bx, ay + by)
                out[key] = out.get(key, Fraction(0)) + ac * bc
        return BiPoly(out)

    __rmul__ = __mul__

    def truncate_y(self, order: int) -> "BiPoly":
        """Drop every monomial of y-degree above the order."""
        return BiPoly({k: c for k, c in self.grid.items() if k[1] <= order})

    def y_coefficient(self, dy: int, var: str = "x") -> UniPoly:
        """The coefficient of y**dy as a univariate polynomial in x."""
        top = max((dx for (dx, d) in self.grid if d == dy), default=-1)
        coeffs = [self.coefficient(dx, dy) for dx in range(top + 1)]
        return UniPoly(coeffs, var=var)

    def __repr__(self) -> str:
        body = ", ".join(f"x^{dx} y^{dy}: {c}" for dx, dy, c in self.terms())
        return f"BiPoly({{{body}}})"


@dataclass(frozen=True)
class SymbolTruncation:
    """Polynomial part of an operator symbol (the e^{-xy} prefactor removed),
    retained through series index / y-order ``order`` in the chosen basis."""

    grid: BiPoly
    order: int
    basis: BasisId

    def y_truncated(self, order: Optional[int] = None) -> BiPoly:
        return self.grid.truncate_y(self.order if order is None else order)


# ---------------------------------------------------------------------------
# symbol construction
# ---------------------------------------------------------------------------


def _delta_values(s: SequenceSpec, order: int):
    a = binomial_invert(s) if s.is_polynomial else binomial_invert(s, order)
    return [a.coefficient(n) for n in range(order + 1)]


def symbol_basis_form(s: SequenceSpec, alpha: RationalLike, order: int) -> SymbolTruncation:
    """sum_{n <= order} a_n y^n L_n^(alpha)(xy + x), with complete terms."""
    basis = laguerre(alpha)
    if order < 0:
        raise ValueError("order must be nonnegative")
    a = _delta_values(s, order)
    # t -> x (y + 1): t^k becomes x^k (1+y)^k
    one_plus_y = BiPoly({(0, 0): 1, (0, 1): 1})
    x = BiPoly({(1, 0): 1})
    total = BiPoly()
    substituted_power = BiPoly.constant(1)  # (x(1+y))^k, built incrementally
    powers = [BiPoly.constant(1)]
    for _ in range(order):
        substituted_power = substituted_power * x * one_plus_y
        powers.append(substituted_power)
    for n, an in enumerate(a):
        if an == 0:
            continue
        ln = laguerre_polynomial(n, basis.alpha)
        term = BiPoly()
        for k, c in enumerate(ln.coeffs):
            if c:
                term = term + powers[k] * c
        total = total + BiPoly({(0, n): an}) * term
    return SymbolTruncation(total, order, basis)


def symbol_p_form(s: SequenceSpec, alpha: RationalLike, order: int) -> SymbolTruncation:
    """sum_k p^(k)(y) (-x y (y+1))^k / ((alpha+1)...(alpha+k) k!), with p built
    from the binomial transform through the given order."""
    basis = laguerre(alpha)
    if order < 0:
        raise ValueError("order must be nonnegative")
    alpha = basis.alpha
    if s.is_polynomial:
        p = build_p(s, alpha)
    else:
        from .ratpoly import generalized_binomial
        a = _delta_values(s, order)
        p = UniPoly([generalized_binomial(alpha + k, k) * ak
                     for k, ak in enumerate(a)], var="y")
    minus_xyy1 = BiPoly({(1, 1): -1, (1, 2): -1})  # -x y (y+1)
    total = BiPoly()
    power = BiPoly.constant(1)
    rising = Fraction(1)  # (alpha+1)...(alpha+k)
    deg = p.degree if not p.is_zero else -1
    deriv = p
    for k in range(deg + 1):
        if k:
            power = power * minus_xyy1
            rising *= alpha + k
            deriv = deriv.derivative()
        scale = Fraction(1) / (rising * factorial(k))
        total = total + power * BiPoly.from_unipoly(deriv, "y") * scale
    return SymbolTruncation(total, order, basis)


def substituted_p(p: UniPoly) -> BiPoly:
    """Exact composition p(y - x y (y+1))."""
    inner = BiPoly({(0, 1): 1, (1, 1): -1, (1, 2): -1})
    out = BiPoly()
    for c in reversed(p.coeffs):
        out = out * inner + BiPoly.constant(c)
    return out


def hermite_symbol(s: SequenceSpec, order: int) -> SymbolTruncation:
    """y-truncation of e^{y^2/4} sum_{k <= order} lambda_k H_k(x) (-y)^k / (2^k k!)."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    series = BiPoly()
    for k in range(order + 1):
        lam = s.value(k)
        if lam == 0:
            continue
        scale = lam * Fraction((-1) ** k, (2 ** k) * factorial(k))
        series = series + BiPoly({(0, k): 1}) * BiPoly.from_unipoly(
            hermite_polynomial(k), "x") * scale
    exp_part = BiPoly({(0, 2 * j): Fraction(1, 4 ** j * factorial(j))
                       for j in range(order // 2 + 1)})
    grid = (exp_part * series).truncate_y(order)
    return SymbolTruncation(grid, order, HERMITE)


def monomial_symbol(s: SequenceSpec, order: int) -> SymbolTruncation:
    """Q(-xy) truncated at y-order: the diagonal monomial operator's symbol
    factors as Q(-xy) e^{-xy}."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    if s.is_polynomial:
        q = build_classical_Q(s)
    else:
        a = _delta_values(s, order)
        q = UniPoly([ak / factorial(k) for k, ak in enumerate(a)], var="y")
    grid = BiPoly({(k, k): c * Fraction((-1) ** k)
                   for k, c in enumerate(q.coeffs) if k <= order})
    return SymbolTruncation(grid, order, MONOMIAL)


def symbol_for_basis(s: SequenceSpec, basis: BasisId, order: int) -> SymbolTruncation:
    if basis.kind == "laguerre":
        return symbol_basis_form(s, basis.alpha, order)
    if basis.kind == "hermite":
        return hermite_symbol(s, order)
    return monomial_symbol(s, order)


# ---------------------------------------------------------------------------
# Wronskians, interlacing, proper position
# ---------------------------------------------------------------------------


def wronskian(f: UniPoly, g: UniPoly) -> UniPoly:
    """W[f, g] = f'g - fg'."""
    return f.derivative() * g - f * g.derivative()


def pencil_q(p: UniPoly, alpha: RationalLike) -> UniPoly:
    """q(y) = y p(y) + y(y+1) p'(y) / (1 + alpha): the first-order coefficient
    of the symbol pencil p(y) - x q(y)."""
    alpha = Fraction(alpha)
    if alpha <= -1:
        raise ValueError("alpha out of range: must satisfy alpha > -1")
    y = UniPoly((0, 1), var=p.var or "y")
    return y * p + y * (y + 1) * p.derivative() / (1 + alpha)


def _separated_roots(f: UniPoly, g: UniPoly):
    """Merged root order of two coprime square-free polynomials as a list of
    'f'/'g' labels, with isolating intervals refined until pairwise disjoint
    (possible exactly because the root sets are disjoint)."""
    entries = [[label, iv.lo, iv.hi, poly]
               for poly, label in ((f, "f"), (g, "g")) if poly.degree >= 1
               for iv in isolate_real_roots(poly)]
    while True:
        overlap = None
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                a, b = entries[i], entries[j]
                if a[1] <= b[2] and b[1] <= a[2]:  # closed intervals meet
                    overlap = (a, b)
                    break
            if overlap:
                break
        if overlap is None:
            break
        a, b = overlap
        target = a if (a[2] - a[1]) >= (b[2] - b[1]) else b
        if target[1] == target[2]:
            target = b if target is a else a
        lo, hi = _bisect_root(target[3], target[1], target[2])
        target[1], target[2] = lo, hi
    entries.sort(key=lambda e: (e[1], e[2]))
    return [e[0] for e in entries]


def _bisect_root(poly: UniPoly, lo: Fraction, hi: Fraction):
    mid = (lo + hi) / 2
    v = poly(mid)
    if v == 0:
        return mid, mid
    if (poly(lo) > 0) != (v > 0):
        return lo, mid
    return mid, hi


def proper_position(f: UniPoly, g: UniPoly) -> bool:
    """Whether f << g: zeros interlace (common zeros allowed; constants
    interlace anything of degree at most one) and W[f, g] <= 0 on R.
    Equivalent to stability of g + i f.  Inputs must be real-rooted."""
    if not is_real_rooted(f) or not is_real_rooted(g):
        raise ValueError("inputs must be real-rooted")
    if f.is_zero and g.is_zero:
        raise ValueError("proper position is undefined for two zero polynomials")
    if f.is_zero or g.is_zero:
        # The zero polynomial interlaces everything and the Wronskian vanishes.
        return True
    if abs(f.degree - g.degree) > 1:
        return False
    d = poly_gcd(f, g)
    f1 = (f // d).monic()
    g1 = (g // d).monic()
    if f1.degree == 0 or g1.degree == 0:
        interlaced = max(f1.degree, g1.degree) <= 1
    elif square_free_part(f1).degree != f1.degree \
            or square_free_part(g1).degree != g1.degree:
        # A repeated zero of one coprime part would need a matching zero of
        # the other between its copies, contradicting coprimality.
        interlaced = False
    else:
        labels = _separated_roots(f1, g1)
        interlaced = all(a != b for a, b in zip(labels, labels[1:]))
    if not interlaced:
        return False
    return sign_semidefinite_on_reals(wronskian(f, g)) in (SIGN_NONPOSITIVE, SIGN_ZERO)


def pencil_stability(p: UniPoly, alpha: RationalLike) -> bool:
    """Hermite-Biehler criterion for the pencil: stability of q + i p with
    q = pencil_q(p, alpha).  False whenever p is not real-rooted; True for
    the zero polynomial by convention."""
    if p.is_zero:
        return True
    if not is_real_rooted(p):
        return False
    q = pencil_q(p, alpha)
    if not is_real_rooted(q):
        return False
    return proper_position(p, q)
