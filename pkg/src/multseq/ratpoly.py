"""Exact univariate polynomial arithmetic over the rationals, with certified
real-root counting, isolation and sign analysis.

Coefficients are ``fractions.Fraction`` throughout; every predicate exposed
here (root counts, real-rootedness, interval membership, semidefiniteness)
is decided exactly.  No floating point enters any verdict.

Root counting uses Sturm chains of the square-free part.  Chains are carried
as primitive integer coefficient vectors (each element is a positive rational
multiple of the canonical chain element, which leaves every sign variation
count unchanged) so that the inner loops run on machine/big integers rather
than on Fraction objects.  Root isolation is dyadic bisection on a power-of-two
Cauchy bound; rational roots hit by a bisection midpoint are extracted exactly
and deflated out.  Multiplicities come from a Yun square-free decomposition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

Rational = Fraction

RationalLike = Union[Fraction, int, str]

#: Degree reported for the zero polynomial.
NEG_INFINITY = float("-inf")

#: Default width for isolating intervals of irrational roots.
DEFAULT_ISOLATION_TOLERANCE = Fraction(1, 1 << 30)


def rational(value: RationalLike, denominator: Optional[RationalLike] = None) -> Fraction:
    """Coerce ints, strings like ``"-3/4"`` or Fractions to an exact Fraction."""
    if denominator is not None:
        return Fraction(Fraction(value), Fraction(denominator))
    return Fraction(value)


class UniPoly:
    """Dense exact univariate polynomial; ``coeffs[k]`` multiplies ``var**k``.

    Trailing zero coefficients are stripped on construction, so the leading
    coefficient of a nonzero polynomial is never zero and the zero polynomial
    is the empty tuple.  The variable name is display metadata only; equality
    and hashing ignore it.  Instances are immutable by convention: all
    operations return new polynomials.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable[RationalLike] = (), var: str = "y"):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)
        self.var = var

    @classmethod
    def zero(cls, var: str = "y") -> "UniPoly":
        return cls((), var)

    @classmethod
    def constant(cls, value: RationalLike, var: str = "y") -> "UniPoly":
        return cls((value,), var)

    @classmethod
    def variable(cls, var: str = "y") -> "UniPoly":
        return cls((0, 1), var)

    @classmethod
    def from_roots(cls, roots: Iterable[RationalLike], scale: RationalLike = 1,
                   var: str = "y") -> "UniPoly":
        """``scale * prod (var - r)`` over the given root multiset."""
        p = cls((Fraction(scale),), var)
        for r in roots:
            p = p * cls((-Fraction(r), Fraction(1)), var)
        return p

    # -- basic queries ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self):
        """Degree as an int; NEG_INFINITY for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INFINITY

    @property
    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == UniPoly((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "UniPoly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            (self.coefficient(k) + other.coefficient(k) for k in range(n)), self.var)

    __radd__ = __add__

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._coerce(other) + (-self)

    def __neg__(self) -> "UniPoly":
        return UniPoly((-c for c in self.coeffs), self.var)

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            return UniPoly((c * other for c in self.coeffs), self.var)
        if not isinstance(other, UniPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return UniPoly((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "UniPoly":
        return self * (Fraction(1) / Fraction(scalar))

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = UniPoly((1,), self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(len(self.coeffs) - len(other.coeffs) + 1, 0)
        r = list(self.coeffs)
        d = len(other.coeffs) - 1
        lead = other.coeffs[-1]
        while len(r) - 1 >= d and r:
            k = len(r) - 1 - d
            c = r[-1] / lead
            q[k] = c
            for i, b in enumerate(other.coeffs):
                r[i + k] -= c * b
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        return UniPoly(q, self.var), UniPoly(r, self.var)

    def __floordiv__(self, other) -> "UniPoly":
        return divmod(self, self._coerce(other))[0]

    def __mod__(self, other) -> "UniPoly":
        return divmod(self, self._coerce(other))[1]

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly((other,), self.var)
        raise TypeError(f"cannot combine UniPoly with {type(other)!r}")

    # -- calculus / composition --------------------------------------------

    def derivative(self) -> "UniPoly":
        return UniPoly(
            (k * c for k, c in enumerate(self.coeffs) if k >= 1), self.var)

    def compose(self, inner: "UniPoly") -> "UniPoly":
        """Exact composition self(inner(var))."""
        out = UniPoly((), inner.var)
        for c in reversed(self.coeffs):
            out = out * inner + UniPoly((c,), inner.var)
        return out

    def __call__(self, point: RationalLike) -> Fraction:
        x = Fraction(point)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        return self / self.leading_coefficient

    # -- display -------------------------------------------------------------

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self.coeffs]}, var={self.var!r})"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                term = str(c)
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                var = self.var if k == 1 else f"{self.var}^{k}"
                term = f"{mag}{var}"
                if c < 0:
                    term = "-" + term
            if parts and not term.startswith("-"):
                parts.append("+ " + term)
            elif parts:
                parts.append("- " + term[1:])
            else:
                parts.append(term)
        return " ".join(parts)


@dataclass(frozen=True)
class IsolatingInterval:
    """Closed rational interval certified to contain exactly one distinct real
    root of a reference polynomial, of the stated multiplicity.  ``lo == hi``
    only when the root is exactly rational."""

    lo: Fraction
    hi: Fraction
    multiplicity: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: RationalLike) -> bool:
        x = Fraction(x)
        return self.lo <= x <= self.hi


# ---------------------------------------------------------------------------
# integer-chain internals
# ---------------------------------------------------------------------------


def _strip_content(ints: Sequence[int]) -> list:
    """Remove trailing zeros and divide by the positive content."""
    cs = list(ints)
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        return []
    g = 0
    for v in cs:
        g = math.gcd(g, v)
    if g > 1:
        cs = [v // g for v in cs]
    return cs


def _integer_coeffs(p: UniPoly) -> list:
    """Primitive integer coefficient vector equal to a positive multiple of p."""
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return _strip_content([int(c * den) for c in p.coeffs])


def _pseudo_rem_signed(f: Sequence[int], g: Sequence[int]) -> list:
    """Polynomial remainder of f by g scaled by a positive integer.

    Each elimination step multiplies the running remainder by the leading
    coefficient of g; the accumulated sign is corrected at the end so the
    result is always a positive multiple of the exact rational remainder.
    """
    dg = len(g) - 1
    lg = g[-1]
    r = list(f)
    negate = False
    while r and len(r) - 1 >= dg:
        dr = len(r) - 1
        lr = r[-1]
        r = [lg * c for c in r]
        if lg < 0:
            negate = not negate
        off = dr - dg
        for i, gc in enumerate(g):
            r[i + off] -= lr * gc
        while r and r[-1] == 0:
            r.pop()
    if negate:
        r = [-c for c in r]
    return r


def _int_derivative(ints: Sequence[int]) -> list:
    return [k * ints[k] for k in range(1, len(ints))]


def _sturm_chain_int(f: Sequence[int]) -> list:
    """Sturm chain of f as primitive integer vectors (positive multiples)."""
    chain = [_strip_content(f)]
    d = _strip_content(_int_derivative(chain[0]))
    if d:
        chain.append(d)
    while len(chain[-1]) > 1:
        r = _pseudo_rem_signed(chain[-2], chain[-1])
        r = _strip_content([-c for c in r])
        if not r:
            break
        chain.append(r)
    return chain


def _sign_at(ints: Sequence[int], num: int, den: int) -> int:
    """Sign of the integer polynomial at num/den (den > 0)."""
    d = len(ints) - 1
    acc = ints[-1]
    dp = 1
    for k in range(d - 1, -1, -1):
        dp *= den
        acc = acc * num + ints[k] * dp
    return (acc > 0) - (acc < 0)


def _variations_at(chain: Sequence[Sequence[int]], point) -> int:
    """Sign variations of the chain at a rational point or at ±infinity."""
    signs = []
    for ints in chain:
        lead = ints[-1]
        if point == "+inf":
            s = (lead > 0) - (lead < 0)
        elif point == "-inf":
            s = (lead > 0) - (lead < 0)
            if (len(ints) - 1) % 2 == 1:
                s = -s
        else:
            s = _sign_at(ints, point.numerator, point.denominator)
        if s:
            signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


# ---------------------------------------------------------------------------
# gcd / square-free structure
# ---------------------------------------------------------------------------


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over the rationals (primitive remainder sequence on integers)."""
    if a.is_zero and b.is_zero:
        return UniPoly((), a.var)
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    fa, fb = _integer_coeffs(a), _integer_coeffs(b)
    if len(fa) < len(fb):
        fa, fb = fb, fa
    while fb:
        fa, fb = fb, _strip_content(_pseudo_rem_signed(fa, fb))
    return UniPoly(fa, a.var).monic()


def square_free_part(p: UniPoly) -> UniPoly:
    """p / gcd(p, p'), monic: same distinct roots as p, all simple."""
    if p.is_zero:
        raise ValueError("square-free part is undefined for the zero polynomial")
    if p.degree == 0:
        return UniPoly((1,), p.var)
    g = poly_gcd(p, p.derivative())
    q, _ = divmod(p, g)
    return q.monic()


def square_free_decomposition(p: UniPoly) -> list:
    """Yun decomposition: list of (monic factor, multiplicity) with
    p = lc * prod factor**multiplicity and the factors pairwise coprime
    and square-free."""
    if p.is_zero:
        raise ValueError("square-free decomposition is undefined for the zero polynomial")
    f = p.monic()
    if f.degree == 0:
        return []
    d = f.derivative()
    a = poly_gcd(f, d)
    b = (f // a).monic()
    c = d // a
    out = []
    i = 1
    while b.degree >= 1:
        z = c - b.derivative()
        g = poly_gcd(b, z)
        if g.degree >= 1:
            out.append((g, i))
        b = (b // g).monic()
        c = z // g
        i += 1
    return out


def cauchy_root_bound(p: UniPoly) -> Fraction:
    """B with every real root of p strictly inside (-B, B)."""
    if p.is_zero:
        raise ValueError("root bound is undefined for the zero polynomial")
    if p.degree == 0:
        return Fraction(1)
    lead = abs(p.leading_coefficient)
    top = max(abs(c) for c in p.coeffs[:-1])
    return Fraction(1) + top / lead


def _dyadic_bound(p: UniPoly) -> Fraction:
    b = cauchy_root_bound(p)
    two = Fraction(1)
    while two < b:
        two *= 2
    return two


# ---------------------------------------------------------------------------
# root counting
# ---------------------------------------------------------------------------


def count_real_roots(p: UniPoly, interval: Optional[Tuple[RationalLike, RationalLike]] = None) -> int:
    """Exact number of distinct real roots, over all reals or in a closed
    interval [a, b] (endpoint roots are counted)."""
    if p.is_zero:
        raise ValueError("root counting is undefined for the zero polynomial")
    s = square_free_part(p)
    if s.degree <= 0:
        return 0
    if interval is None:
        chain = _sturm_chain_int(_integer_coeffs(s))
        return _variations_at(chain, "-inf") - _variations_at(chain, "+inf")
    a, b = Fraction(interval[0]), Fraction(interval[1])
    if a > b:
        raise ValueError("interval endpoints out of order")
    if a == b:
        return 1 if p(a) == 0 else 0
    extra = 0
    # Deflate endpoint roots so the Sturm count below runs with nonvanishing
    # endpoints; the open-interval count then equals V(a) - V(b).
    if s(a) == 0:
        s = s // UniPoly((-a, 1), s.var)
        extra += 1
    if s(b) == 0:
        s = s // UniPoly((-b, 1), s.var)
        extra += 1
    if s.degree <= 0:
        return extra
    chain = _sturm_chain_int(_integer_coeffs(s))
    return extra + _variations_at(chain, a) - _variations_at(chain, b)


def is_real_rooted(p: UniPoly) -> bool:
    """True iff every complex zero of p is real.  Constants (including the
    zero polynomial) count as real-rooted."""
    if p.is_zero or p.degree == 0:
        return True
    s = square_free_part(p)
    return count_real_roots(s) == s.degree


def zeros_within(p: UniPoly, a: RationalLike, b: RationalLike) -> bool:
    """True iff p is real-rooted and every root lies in [a, b].  Nonzero
    constants qualify vacuously; the zero polynomial is rejected."""
    if p.is_zero:
        raise ValueError("zeros_within is undefined for the zero polynomial")
    a, b = Fraction(a), Fraction(b)
    if a > b:
        raise ValueError("interval endpoints out of order")
    if not is_real_rooted(p):
        return False
    if p.degree == 0:
        return True
    return count_real_roots(p, (a, b)) == count_real_roots(p)


SIGN_ZERO = "zero"
SIGN_NONNEGATIVE = "nonnegative"
SIGN_NONPOSITIVE = "nonpositive"
SIGN_INDEFINITE = "indefinite"


def sign_semidefinite_on_reals(p: UniPoly) -> str:
    """Exact global sign class of p on the reals.

    A nonzero polynomial is semidefinite iff all its real roots have even
    multiplicity; the shared sign is then the sign of the leading coefficient.
    """
    if p.is_zero:
        return SIGN_ZERO
    if p.degree == 0:
        return SIGN_NONNEGATIVE if p.coeffs[0] > 0 else SIGN_NONPOSITIVE
    for factor, mult in square_free_decomposition(p):
        if mult % 2 == 1 and count_real_roots(factor) > 0:
            return SIGN_INDEFINITE
    return SIGN_NONNEGATIVE if p.leading_coefficient > 0 else SIGN_NONPOSITIVE


# ---------------------------------------------------------------------------
# root isolation
# ---------------------------------------------------------------------------


def _isolate_squarefree(s: UniPoly, tol: Fraction, forbidden: Sequence[Fraction]):
    """Isolate all real roots of square-free s by dyadic bisection.

    Returns either a Fraction (an exact rational root discovered at a
    bisection midpoint; the caller deflates and restarts) or a list of
    (lo, hi) pairs, each of width <= tol, each containing exactly one root
    of s and no point of ``forbidden``.
    """
    ints = _integer_coeffs(s)
    chain = _sturm_chain_int(ints)
    bound = _dyadic_bound(s)

    def var(x: Fraction) -> int:
        return _variations_at(chain, x)

    lo0, hi0 = -bound, bound
    out = []
    stack = [(lo0, hi0, var(lo0), var(hi0))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n <= 0:
            continue
        if n == 1:
            while (hi - lo) > tol or any(lo <= f <= hi for f in forbidden):
                mid = (lo + hi) / 2
                if _sign_at(ints, mid.numerator, mid.denominator) == 0:
                    return mid
                vm = var(mid)
                if vlo - vm == 1:
                    hi, vhi = mid, vm
                else:
                    lo, vlo = mid, vm
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if _sign_at(ints, mid.numerator, mid.denominator) == 0:
            return mid
        vm = var(mid)
        stack.append((lo, mid, vlo, vm))
        stack.append((mid, hi, vm, vhi))
    return out


def _shrink_once(s: UniPoly, lo: Fraction, hi: Fraction):
    """One bisection step on an interval with a sign change of s."""
    mid = (lo + hi) / 2
    v = s(mid)
    if v == 0:
        return mid, mid
    if (s(lo) > 0) != (v > 0):
        return lo, mid
    return mid, hi


def isolate_real_roots(p: UniPoly, tolerance: RationalLike = DEFAULT_ISOLATION_TOLERANCE) -> list:
    """Disjoint isolating intervals for the distinct real roots of p, sorted
    by position, each of width <= tolerance, with exact rational roots
    reported as point intervals and multiplicities taken in p itself."""
    if p.is_zero:
        raise ValueError("root isolation is undefined for the zero polynomial")
    tol = Fraction(tolerance)
    if tol <= 0:
        raise ValueError("tolerance must be positive")

    s = square_free_part(p)
    points = []
    intervals = []
    while s.degree >= 1:
        res = _isolate_squarefree(s, tol, points)
        if isinstance(res, Fraction):
            points.append(res)
            s = s // UniPoly((-res, 1), s.var)
            continue
        intervals = res
        break

    # Bisection cells may share an endpoint; shrink until strictly disjoint.
    intervals.sort()
    changed = True
    while changed:
        changed = False
        entries = sorted([(x, x) for x in points] + intervals)
        for (alo, ahi), (blo, bhi) in zip(entries, entries[1:]):
            if ahi >= blo and (alo, ahi) in intervals and ahi != alo:
                intervals.remove((alo, ahi))
                nlo, nhi = _shrink_once(s, alo, ahi)
                if nlo == nhi:
                    points.append(nlo)
                    s = s // UniPoly((-nlo, 1), s.var)
                else:
                    intervals.append((nlo, nhi))
                intervals.sort()
                changed = True
                break
            if ahi >= blo and (blo, bhi) in intervals and bhi != blo:
                intervals.remove((blo, bhi))
                nlo, nhi = _shrink_once(s, blo, bhi)
                if nlo == nhi:
                    points.append(nlo)
                    s = s // UniPoly((-nlo, 1), s.var)
                else:
                    intervals.append((nlo, nhi))
                intervals.sort()
                changed = True
                break

    decomp = square_free_decomposition(p)
    results = []
    for rho in points:
        mult = next(m for factor, m in decomp if factor(rho) == 0)
        results.append(IsolatingInterval(rho, rho, mult))
    for lo, hi in intervals:
        mult = next(m for factor, m in decomp
                    if factor.degree >= 1 and count_real_roots(factor, (lo, hi)) == 1)
        results.append(IsolatingInterval(lo, hi, mult))
    results.sort(key=lambda iv: (iv.lo, iv.hi))
    return results


# ---------------------------------------------------------------------------
# scalar helpers shared by the basis and sequence layers
# ---------------------------------------------------------------------------


def generalized_binomial(top: RationalLike, k: int) -> Fraction:
    """Binomial coefficient C(top, k) for rational top and integer k >= 0,
    via the falling-factorial product (exact for non-integer top)."""
    if k < 0:
        raise ValueError("lower index must be nonnegative")
    top = Fraction(top)
    num = Fraction(1)
    for j in range(k):
        num *= top - j
    return num / math.factorial(k)
