"""Decision procedures for multiplier sequences, with checkable certificates.

A sequence {lambda_n} is classified against a basis by reducing the question
to exact root location:

* Laguerre(alpha): a nontrivial polynomial-type sequence is a multiplier
  sequence iff its test polynomial p(y) (see ``seqmodel.build_p``) is
  real-rooted with every zero in [-1, 0].
* monomial: iff Q(y) (``seqmodel.build_classical_Q``) is real-rooted with
  every zero <= 0; the opposite-sign branch of the classical criterion cannot
  occur for polynomial-type sequences because their exponential generating
  function factors as Q(x) e^x with the fixed positive exponential factor.
* Hermite: after sign normalization (entries of a multiplier sequence are
  one-signed or alternating, and the Hermite property is insensitive to the
  alternation flip), a nontrivial nonnegative sequence qualifies iff it is a
  monomial-basis multiplier sequence and is nondecreasing.

Explicit finite prefixes get three-valued verdicts: sound rejections carry a
concrete witness (a sign/gap violation, a monotonicity violation, or an
operator input whose image has nonreal zeros), and the only "yes" a prefix
can earn is triviality of a list flagged complete.  Every yes/no verdict
carries a certificate that can be re-verified without trusting the
classifier: isolating intervals for root locations, a real-root deficit for
nonreal zeros, or the witness objects above.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple, Union

from .orthobasis import BasisId, MONOMIAL, HERMITE, laguerre
from .ratpoly import (
    DEFAULT_ISOLATION_TOLERANCE,
    IsolatingInterval,
    RationalLike,
    UniPoly,
    cauchy_root_bound,
    count_real_roots,
    isolate_real_roots,
    square_free_part,
)
from .seqmodel import (
    NONTRIVIAL,
    TRIVIAL,
    UNDETERMINED,
    SequenceSpec,
    Triviality,
    build_classical_Q,
    build_p,
    is_trivial,
)
from .transform import Counterexample, apply_diagonal, structured_family

YES = "yes"
NO = "no"

REASON_TRIVIAL = "trivial sequence"
REASON_P_IN_RANGE = "p real-rooted with all zeros in [-1,0]"
REASON_P_NONREAL = "p has nonreal zeros"
REASON_P_OUTSIDE = "p has a zero outside [-1,0]"
REASON_Q_IN_RANGE = "generating polynomial real-rooted with all zeros <= 0"
REASON_Q_NONREAL = "generating polynomial has nonreal zeros"
REASON_Q_POSITIVE = "generating polynomial has a positive zero"
REASON_HERMITE_YES = "nonnegative, nondecreasing, classical multiplier sequence"
REASON_NOT_CLASSICAL = "not a classical multiplier sequence"
REASON_SIGN_PATTERN = "sign pattern inconsistent with any multiplier sequence"
REASON_ZERO_GAP = "zero entry between nonzero entries"
REASON_DECREASING = "sequence decreases after sign normalization"
REASON_IMAGE_NONREAL = "operator image with nonreal zeros"
REASON_CONSISTENT = "bounded checks consistent with a multiplier sequence"

NORMALIZATION_IDENTITY = "identity"
NORMALIZATION_NEGATE = "negate"
NORMALIZATION_ALTERNATE = "alternate"
NORMALIZATION_ALTERNATE_NEGATE = "alternate-negate"


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootLocations:
    """Isolating intervals for every distinct real zero of the test polynomial."""

    intervals: Tuple[IsolatingInterval, ...]


@dataclass(frozen=True)
class OffendingRoot:
    """An isolating interval, disjoint from the admissible region, containing
    a zero of the test polynomial."""

    interval: IsolatingInterval


@dataclass(frozen=True)
class NonrealPairWitness:
    """Sturm deficit: fewer real roots than the square-free degree."""

    real_root_count: int
    square_free_degree: int


@dataclass(frozen=True)
class SignGapWitness:
    """Indices (with their values) jointly violating the necessary sign
    conditions: either a zero entry strictly between nonzero entries, or a
    sign pattern which is neither one-signed nor alternating."""

    indices: Tuple[int, ...]
    values: Tuple[Fraction, ...]


@dataclass(frozen=True)
class MonotonicityWitness:
    """An index n with lambda_n > lambda_{n+1} after sign normalization."""

    index: int
    value: Fraction
    next_value: Fraction


@dataclass(frozen=True)
class TrivialK:
    """All entries outside {k, k+1} vanish."""

    k: int


@dataclass(frozen=True)
class ConsistencyBound:
    """Every bounded check up to this degree cap passed."""

    degree_cap: int


Certificate = Union[RootLocations, OffendingRoot, NonrealPairWitness,
                    SignGapWitness, MonotonicityWitness, TrivialK,
                    ConsistencyBound, Counterexample]


@dataclass(frozen=True)
class Verdict:
    status: str  # "yes" | "no" | "undetermined"
    reason: str
    certificate: Optional[Certificate] = None


@dataclass(frozen=True)
class ClassificationReport:
    basis: BasisId
    sequence: SequenceSpec
    verdict: Verdict
    derived: dict = field(default_factory=dict)
    normalization: Optional[str] = None


@dataclass(frozen=True)
class BoundedConsistency:
    status: str  # "no" | "consistent"
    degree_cap: int
    witness: Optional[Union[SignGapWitness, Counterexample]] = None


# ---------------------------------------------------------------------------
# sign analysis over the nonnegative integers
# ---------------------------------------------------------------------------


def _integer_candidates(p: UniPoly) -> list:
    """Nonnegative integers sufficient to witness any sign a polynomial takes
    on the naturals: for each real root, the integers flanking its isolating
    interval; plus 0; sign beyond the root bound is the leading sign."""
    cand = {0}
    if p.degree >= 1:
        for iv in isolate_real_roots(p, tolerance=Fraction(1, 4)):
            lo = int(iv.lo.__floor__()) - 1
            hi = int(iv.hi.__floor__()) + 2
            for n in range(lo, hi + 1):
                if n >= 0:
                    cand.add(n)
    return sorted(cand)


def poly_nonnegative_on_naturals(p: UniPoly) -> bool:
    """Exactly decide P(n) >= 0 for all integers n >= 0."""
    if p.is_zero:
        return True
    if p.degree == 0:
        return p.coeffs[0] >= 0
    if p.leading_coefficient < 0:
        return False
    return all(p(n) >= 0 for n in _integer_candidates(p))


def first_negative_index(p: UniPoly) -> Optional[int]:
    """Smallest integer n >= 0 with P(n) < 0, or None."""
    if p.is_zero:
        return None
    if p.degree == 0:
        return 0 if p.coeffs[0] < 0 else None
    cand = _integer_candidates(p)
    if p.leading_coefficient < 0:
        cand.append(max(cand) + int(cauchy_root_bound(p).__ceil__()) + 1)
    negatives = [n for n in cand if p(n) < 0]
    return min(negatives) if negatives else None


def _poly_sample_entries(p: UniPoly) -> list:
    """(n, P(n)) pairs out to just beyond every real root, where the sign of
    P settles; enough to decide every sign-pattern question on the naturals."""
    horizon = 2
    if not p.is_zero and p.degree >= 1:
        horizon = int(cauchy_root_bound(p).__ceil__()) + 2
    return [(n, p(n)) for n in range(horizon + 1)]


def _known_entries(s: SequenceSpec) -> list:
    if s.is_polynomial:
        return _poly_sample_entries(s.poly)
    return list(enumerate(s.values))


def _zero_gap(entries) -> Optional[SignGapWitness]:
    """First (k, i, l) with lambda_k != 0, lambda_i = 0, lambda_l != 0."""
    first_nonzero = None
    zero_after = None
    for n, v in entries:
        if v != 0 and first_nonzero is None:
            first_nonzero = n
        elif v == 0 and first_nonzero is not None and zero_after is None:
            zero_after = n
        elif v != 0 and zero_after is not None:
            idx = (first_nonzero, zero_after, n)
            vals = dict(entries)
            return SignGapWitness(idx, tuple(vals[i] for i in idx))
    return None


_PATTERNS = (
    lambda n, v: v >= 0,
    lambda n, v: v <= 0,
    lambda n, v: (v if n % 2 == 0 else -v) >= 0,
    lambda n, v: (v if n % 2 == 0 else -v) <= 0,
)


def _sign_pattern_violation(entries) -> Optional[SignGapWitness]:
    """Witness indices when no admissible pattern (one-signed in either
    orientation, alternating in either orientation) fits the known entries."""
    witness_indices = []
    for fits in _PATTERNS:
        first_bad = next((n for n, v in entries if not fits(n, v)), None)
        if first_bad is None:
            return None
        witness_indices.append(first_bad)
    idx = tuple(sorted(set(witness_indices)))
    vals = dict(entries)
    return SignGapWitness(idx, tuple(vals[i] for i in idx))


def _screen_necessary_conditions(entries) -> Optional[SignGapWitness]:
    return _zero_gap(entries) or _sign_pattern_violation(entries)


def _orientation(entries) -> str:
    for name, fits in zip((NORMALIZATION_IDENTITY, NORMALIZATION_NEGATE,
                           NORMALIZATION_ALTERNATE, NORMALIZATION_ALTERNATE_NEGATE),
                          _PATTERNS):
        if all(fits(n, v) for n, v in entries):
            return name
    raise ValueError("no sign orientation fits; screen first")


def _normalize_sequence(s: SequenceSpec, orientation: str) -> SequenceSpec:
    if orientation == NORMALIZATION_IDENTITY:
        return s
    if orientation == NORMALIZATION_NEGATE:
        return s.scaled(-1)
    if s.is_polynomial:
        raise ValueError("polynomial sequences never normalize by alternation")
    flipped = tuple(v if n % 2 == 0 else -v for n, v in enumerate(s.values))
    out = SequenceSpec.from_values(flipped, complete=s.complete)
    if orientation == NORMALIZATION_ALTERNATE_NEGATE:
        out = out.scaled(-1)
    return out


# ---------------------------------------------------------------------------
# root-location verdicts
# ---------------------------------------------------------------------------


def _shrink_step(free: UniPoly, lo: Fraction, hi: Fraction):
    mid = (lo + hi) / 2
    v = free(mid)
    if v == 0:
        return mid, mid
    if (free(lo) > 0) != (v > 0):
        return lo, mid
    return mid, hi


def _locate_against_range(free: UniPoly, iv: IsolatingInterval,
                          lo_bound: Optional[Fraction], hi_bound: Fraction):
    """Decide membership of the root isolated by iv in the closed range,
    refining the interval until it is comparable with the range endpoints."""
    barriers = [b for b in (lo_bound, hi_bound) if b is not None]

    def in_range(x: Fraction) -> bool:
        return (lo_bound is None or lo_bound <= x) and x <= hi_bound

    if iv.is_point:
        return in_range(iv.lo), iv
    for b in barriers:
        if iv.lo <= b <= iv.hi and free(b) == 0:
            return in_range(b), IsolatingInterval(b, b, iv.multiplicity)
    lo, hi = iv.lo, iv.hi
    while any(lo <= b <= hi for b in barriers):
        lo, hi = _shrink_step(free, lo, hi)
        if lo == hi:
            return in_range(lo), IsolatingInterval(lo, lo, iv.multiplicity)
    within = (lo_bound is None or lo_bound <= lo) and hi <= hi_bound
    return within, IsolatingInterval(lo, hi, iv.multiplicity)


def _root_location_verdict(poly: UniPoly, lo_bound: Optional[Fraction],
                           hi_bound: Fraction, tolerance: Fraction,
                           reasons: Tuple[str, str, str]) -> Verdict:
    """Verdict for: poly real-rooted with all zeros in the closed range."""
    reason_yes, reason_nonreal, reason_outside = reasons
    if poly.degree == 0:
        return Verdict(YES, reason_yes, RootLocations(()))
    free = square_free_part(poly)
    total = count_real_roots(poly)
    if total < free.degree:
        return Verdict(NO, reason_nonreal, NonrealPairWitness(total, free.degree))
    located = []
    for iv in isolate_real_roots(poly, tolerance):
        member, refined = _locate_against_range(free, iv, lo_bound, hi_bound)
        if not member:
            return Verdict(NO, reason_outside, OffendingRoot(refined))
        located.append(refined)
    return Verdict(YES, reason_yes, RootLocations(tuple(located)))


_LAGUERRE_REASONS = (REASON_P_IN_RANGE, REASON_P_NONREAL, REASON_P_OUTSIDE)
_CLASSICAL_REASONS = (REASON_Q_IN_RANGE, REASON_Q_NONREAL, REASON_Q_POSITIVE)


# ---------------------------------------------------------------------------
# bounded consistency testing (explicit prefixes; sound rejection only)
# ---------------------------------------------------------------------------


def default_degree_cap(s: SequenceSpec, requested: Optional[int] = None) -> int:
    known = s.known_length()
    if requested is not None:
        if requested < 0:
            raise ValueError("degree cap must be nonnegative")
        if known is not None and requested >= known:
            raise ValueError("cap too large for available prefix")
        return requested
    if known is not None:
        return min(known - 1, 6)
    return 6


def bounded_consistency_test(s: SequenceSpec, basis: BasisId,
                             degree_cap: int) -> BoundedConsistency:
    """Sound rejection harness for sequences known only on a prefix.

    First screens the necessary sign conditions (no zero entry strictly
    between nonzero entries; entries one-signed or alternating), then applies
    the diagonal operator to the structured family of real-rooted polynomials
    of degree <= degree_cap and rejects on the first image with nonreal
    zeros.  Passing is consistency, never proof.
    """
    known = s.known_length()
    if known is not None and degree_cap >= known:
        raise ValueError("cap too large for available prefix")
    if degree_cap < 0:
        raise ValueError("degree cap must be nonnegative")
    screen = _screen_necessary_conditions(_known_entries(s))
    if screen is not None:
        return BoundedConsistency(NO, degree_cap, screen)
    if degree_cap >= 1:
        for poly, roots in structured_family(basis, degree_cap):
            image = apply_diagonal(s, basis, poly)
            if image.is_zero or image.degree == 0:
                continue
            free = square_free_part(image)
            count = count_real_roots(free)
            if count < free.degree:
                return BoundedConsistency(
                    NO, degree_cap,
                    Counterexample(poly, roots, image, count, free.degree))
    return BoundedConsistency("consistent", degree_cap)


def _witness_reason(witness) -> str:
    if isinstance(witness, Counterexample):
        return REASON_IMAGE_NONREAL
    if len(witness.indices) == 3 and witness.values[1] == 0 \
            and witness.values[0] != 0 and witness.values[2] != 0:
        return REASON_ZERO_GAP
    return REASON_SIGN_PATTERN


def _prefix_report(s: SequenceSpec, basis: BasisId, degree_cap: Optional[int],
                   normalization: Optional[str] = None) -> ClassificationReport:
    cap = default_degree_cap(s, degree_cap)
    bt = bounded_consistency_test(s, basis, cap)
    if bt.status == NO:
        verdict = Verdict(NO, _witness_reason(bt.witness), bt.witness)
    else:
        verdict = Verdict(UNDETERMINED, REASON_CONSISTENT, ConsistencyBound(cap))
    return ClassificationReport(basis, s, verdict, normalization=normalization)


# ---------------------------------------------------------------------------
# the three classifiers
# ---------------------------------------------------------------------------


def classify_laguerre(s: SequenceSpec, alpha: RationalLike,
                      degree_cap: Optional[int] = None,
                      tolerance: RationalLike = DEFAULT_ISOLATION_TOLERANCE) -> ClassificationReport:
    """Classify the sequence for the Laguerre(alpha) basis, alpha > -1."""
    alpha = Fraction(alpha)
    basis = laguerre(alpha)  # validates alpha > -1
    triv = is_trivial(s)
    if triv.status == TRIVIAL:
        return ClassificationReport(
            basis, s, Verdict(YES, REASON_TRIVIAL, TrivialK(triv.k)))
    if s.is_polynomial:
        p = build_p(s, alpha)
        verdict = _root_location_verdict(p, Fraction(-1), Fraction(0),
                                         Fraction(tolerance), _LAGUERRE_REASONS)
        return ClassificationReport(basis, s, verdict, derived={"p": p})
    return _prefix_report(s, basis, degree_cap)


def classify_classical(s: SequenceSpec,
                       degree_cap: Optional[int] = None,
                       tolerance: RationalLike = DEFAULT_ISOLATION_TOLERANCE) -> ClassificationReport:
    """Classify the sequence for the monomial basis."""
    triv = is_trivial(s)
    if triv.status == TRIVIAL:
        return ClassificationReport(
            MONOMIAL, s, Verdict(YES, REASON_TRIVIAL, TrivialK(triv.k)))
    if s.is_polynomial:
        q = build_classical_Q(s)
        verdict = _root_location_verdict(q, None, Fraction(0),
                                         Fraction(tolerance), _CLASSICAL_REASONS)
        return ClassificationReport(MONOMIAL, s, verdict, derived={"Q": q})
    return _prefix_report(s, MONOMIAL, degree_cap)


def classify_hermite(s: SequenceSpec,
                     degree_cap: Optional[int] = None,
                     tolerance: RationalLike = DEFAULT_ISOLATION_TOLERANCE) -> ClassificationReport:
    """Classify the sequence for the Hermite basis.

    Entries are first sign-normalized (negate if nonpositive, fold the
    alternation (-1)^n lambda_n if alternating): both moves preserve the
    verdict.  A nontrivial nonnegative sequence qualifies iff it is a
    monomial-basis multiplier sequence with lambda_n <= lambda_{n+1} for all
    n >= 0; for polynomial sequences monotonicity over all integers n >= 0 is
    decided exactly from the difference polynomial.
    """
    triv = is_trivial(s)
    if triv.status == TRIVIAL:
        return ClassificationReport(
            HERMITE, s, Verdict(YES, REASON_TRIVIAL, TrivialK(triv.k)))

    entries = _known_entries(s)
    if triv.status == NONTRIVIAL:
        screen = _screen_necessary_conditions(entries)
        if screen is not None:
            return ClassificationReport(
                HERMITE, s, Verdict(NO, _witness_reason(screen), screen))

    if s.is_polynomial:
        orientation = _orientation(entries)
        normalized = _normalize_sequence(s, orientation)
        q = build_classical_Q(normalized)
        inner = _root_location_verdict(q, None, Fraction(0),
                                       Fraction(tolerance), _CLASSICAL_REASONS)
        if inner.status == NO:
            verdict = Verdict(NO, f"{REASON_NOT_CLASSICAL}: {inner.reason}",
                              inner.certificate)
            return ClassificationReport(HERMITE, s, verdict, derived={"Q": q},
                                        normalization=orientation)
        diff = normalized.poly.compose(UniPoly((1, 1), var="n")) - normalized.poly
        bad = first_negative_index(diff)
        if bad is not None:
            witness = MonotonicityWitness(bad, normalized.poly(bad),
                                          normalized.poly(bad + 1))
            return ClassificationReport(
                HERMITE, s, Verdict(NO, REASON_DECREASING, witness),
                derived={"Q": q}, normalization=orientation)
        return ClassificationReport(
            HERMITE, s, Verdict(YES, REASON_HERMITE_YES, inner.certificate),
            derived={"Q": q}, normalization=orientation)

    # Explicit prefix.  Monotonicity may only reject once the prefix already
    # rules triviality out (trivial sequences need not be monotone).
    normalization = None
    if triv.status == NONTRIVIAL:
        orientation = _orientation(entries)
        normalization = orientation
        normalized = _normalize_sequence(s, orientation)
        vals = list(normalized.values)
        if normalized.complete:
            vals.append(Fraction(0))
        for n in range(len(vals) - 1):
            if vals[n] > vals[n + 1]:
                witness = MonotonicityWitness(n, vals[n], vals[n + 1])
                return ClassificationReport(
                    HERMITE, s, Verdict(NO, REASON_DECREASING, witness),
                    normalization=orientation)
    return _prefix_report(s, HERMITE, degree_cap, normalization=normalization)
