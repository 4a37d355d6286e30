"""Diagonal operator application and root-preservation falsifiers.

``apply_diagonal`` realizes the operator T(P_n) = lambda_n P_n in a chosen
basis: expand, scale coefficient n by lambda_n, assemble.  Everything is
exact, so degree bookkeeping and linearity hold on the nose.

Two falsifiers probe whether T preserves real-rootedness:

* ``verify_preservation`` runs a deterministic fuzzer (products of rational
  linear factors off a grid) and reports the first image with nonreal zeros;
* ``search_counterexample`` sweeps a fixed structured family (binomial
  powers, grid-root products, basis polynomials and their pairwise sums)
  plus a dense half-integer root grid, in a canonical order, so failures are
  reproducible witnesses.

Neither is a sampler with claimed statistics; both exist to produce concrete,
independently checkable counterexamples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional, Tuple

from .orthobasis import (
    BasisExpansion,
    BasisId,
    assemble_from_basis,
    basis_polynomial,
    expand_in_basis,
)
from .ratpoly import UniPoly, count_real_roots, is_real_rooted, square_free_part
from .seqmodel import SequenceSpec

#: Half-integer grid used by the fuzzer and the dense search: -3, -5/2, ..., 3.
DENSE_ROOT_GRID = tuple(Fraction(k, 2) for k in range(-6, 7))

_SCALAR_PALETTE = (Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(2),
                   Fraction(-1, 2), Fraction(3), Fraction(-2), Fraction(2, 3))


@dataclass(frozen=True)
class FuzzConfig:
    seed: int
    trials: int = 200
    max_degree: int = 8
    root_grid: Tuple[Fraction, ...] = DENSE_ROOT_GRID

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.max_degree < 1:
            raise ValueError("max_degree must be >= 1")
        if not self.root_grid:
            raise ValueError("root grid must be nonempty")
        object.__setattr__(self, "root_grid",
                           tuple(Fraction(r) for r in self.root_grid))


@dataclass(frozen=True)
class Counterexample:
    """A real-rooted input whose image under the operator has nonreal zeros.

    ``input_roots`` is the root multiset when the input was built from
    rational roots; None for inputs (such as basis polynomials) whose
    real-rootedness is certified by root counting instead.  The deficit pair
    (real_root_count, square_free_degree) exhibits the missing real roots of
    the image: count < degree.
    """

    input_poly: UniPoly
    input_roots: Optional[Tuple[Fraction, ...]]
    image_poly: UniPoly
    real_root_count: int
    square_free_degree: int

    @property
    def deficit(self) -> Tuple[int, int]:
        return (self.real_root_count, self.square_free_degree)


@dataclass(frozen=True)
class VerificationResult:
    status: str  # "all-passed" | "failed"
    trials: int
    counterexample: Optional[Counterexample] = None

    @property
    def passed(self) -> bool:
        return self.status == "all-passed"


@dataclass(frozen=True)
class SearchResult:
    status: str  # "found" | "none-within-cap"
    degree_cap: int
    counterexample: Optional[Counterexample] = None

    @property
    def found(self) -> bool:
        return self.status == "found"


def apply_diagonal(s: SequenceSpec, basis: BasisId, p: UniPoly) -> UniPoly:
    """Apply the diagonal operator of the sequence to p in the given basis."""
    if p.is_zero:
        return p
    for n in range(p.degree + 1):
        s.value(n)  # raises "insufficient prefix" before any work is done
    e = expand_in_basis(p, basis)
    scaled = [s.value(n) * c for n, c in enumerate(e.coefficients)]
    return assemble_from_basis(BasisExpansion(basis, tuple(scaled)))


def _image_deficit(image: UniPoly) -> Optional[Tuple[int, int]]:
    """(real root count, square-free degree) when the image has nonreal zeros."""
    if image.is_zero or image.degree == 0:
        return None
    free = square_free_part(image)
    count = count_real_roots(free)
    if count < free.degree:
        return count, free.degree
    return None


def _counterexample(input_poly: UniPoly, roots: Optional[Tuple[Fraction, ...]],
                    image: UniPoly) -> Optional[Counterexample]:
    deficit = _image_deficit(image)
    if deficit is None:
        return None
    return Counterexample(input_poly, roots, image, deficit[0], deficit[1])


def random_real_rooted(cfg: FuzzConfig, trial: int) -> Tuple[UniPoly, Tuple[Fraction, ...]]:
    """Deterministic real-rooted sample for the given trial: a scalar times a
    product of linear factors with roots drawn (with repetition) from the
    configured grid.  Returns the polynomial together with its root multiset."""
    if trial < 0 or trial >= cfg.trials:
        raise ValueError("trial index out of range")
    rng = random.Random((cfg.seed << 32) ^ (trial & 0xFFFFFFFF))
    degree = rng.randint(1, cfg.max_degree)
    roots = tuple(rng.choice(cfg.root_grid) for _ in range(degree))
    scalar = rng.choice(_SCALAR_PALETTE)
    return UniPoly.from_roots(roots, scale=scalar, var="x"), roots


def verify_preservation(s: SequenceSpec, basis: BasisId, cfg: FuzzConfig) -> VerificationResult:
    """Fuzz the operator; report the first trial whose image has nonreal zeros."""
    for trial in range(cfg.trials):
        poly, roots = random_real_rooted(cfg, trial)
        image = apply_diagonal(s, basis, poly)
        cex = _counterexample(poly, roots, image)
        if cex is not None:
            return VerificationResult("failed", trial + 1, cex)
    return VerificationResult("all-passed", cfg.trials)


@lru_cache(maxsize=None)
def structured_family(basis: BasisId, degree_cap: int) -> Tuple[Tuple[UniPoly, Optional[Tuple[Fraction, ...]]], ...]:
    """Canonical deterministic family of real-rooted test polynomials.

    Per degree d = 1..cap: (1+x)^d, powers (x-g)^d over a small grid, then
    products of distinct small-grid roots, then the basis polynomial of
    degree d and its pairwise sums with lower basis polynomials.  Candidates
    that are not real-rooted (possible for basis-polynomial sums) are
    filtered out, so every member is a sound witness generator.
    """
    small_grid = tuple(Fraction(k, 2) for k in range(-4, 5))  # -2 .. 2 by halves
    members = []
    for d in range(1, degree_cap + 1):
        ones = tuple(Fraction(-1) for _ in range(d))
        members.append((UniPoly.from_roots(ones, var="x"), ones))
        for g in small_grid:
            roots = tuple(g for _ in range(d))
            members.append((UniPoly.from_roots(roots, var="x"), roots))
        if d >= 2:
            for roots in combinations(small_grid, d):
                members.append((UniPoly.from_roots(roots, var="x"), roots))
        members.append((basis_polynomial(basis, d), None))
        for lower in range(d):
            members.append((basis_polynomial(basis, d) + basis_polynomial(basis, lower), None))
    out = []
    seen = set()
    for poly, roots in members:
        if poly.coeffs in seen:
            continue
        seen.add(poly.coeffs)
        if roots is not None or is_real_rooted(poly):
            out.append((poly, roots))
    return tuple(out)


def _dense_family(degree_cap: int) -> Iterable[Tuple[UniPoly, Tuple[Fraction, ...]]]:
    """Products of distinct linear factors over the dense half-integer grid."""
    for d in range(2, degree_cap + 1):
        for roots in combinations(DENSE_ROOT_GRID, d):
            yield UniPoly.from_roots(roots, var="x"), roots


def search_counterexample(s: SequenceSpec, basis: BasisId, degree_cap: int) -> SearchResult:
    """Deterministic sweep for an operator input whose image has nonreal zeros.

    Runs the structured family first, then the dense grid products, degree by
    degree; the first failing candidate in this fixed order is reported."""
    if degree_cap < 1:
        raise ValueError("degree cap must be >= 1")
    known = s.known_length()

    def candidates():
        for poly, roots in structured_family(basis, degree_cap):
            yield poly, roots
        yield from _dense_family(degree_cap)

    for poly, roots in candidates():
        if known is not None and poly.degree >= known:
            continue
        image = apply_diagonal(s, basis, poly)
        cex = _counterexample(poly, roots, image)
        if cex is not None:
            return SearchResult("found", degree_cap, cex)
    return SearchResult("none-within-cap", degree_cap)
