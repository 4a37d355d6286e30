"""Command-line front end.

Verbs:

* ``classify`` - run the basis-appropriate decision procedure and emit a JSON
  report with verdict, reason and certificate;
* ``apply``    - apply the diagonal operator to a polynomial;
* ``verify``   - classify, then fuzz the operator for root preservation;
* ``symbol``   - emit the (truncated) operator symbol;
* ``certify``  - re-check the certificate of a stored report without
  rerunning the classifier.

Sequences are written ``poly:c0,c1,...`` (lambda_n = sum c_i n^i) or
``list:v0,v1,...`` (a prefix; with ``--complete`` the unlisted tail is zero);
rationals are accepted as ``p/q`` or integer strings and serialized the same
way.  Reports go to stdout as a single JSON document and are byte-identical
across runs for identical arguments and seed (add ``--timing`` to include a
wall-clock field, which breaks that guarantee).  Exit status is 0 whenever
the analysis ran, regardless of verdict; 2 for usage or input errors; 3 for
internal invariant violations.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import classify as _classify
from .classify import (
    ClassificationReport,
    ConsistencyBound,
    Counterexample,
    MonotonicityWitness,
    NonrealPairWitness,
    OffendingRoot,
    RootLocations,
    SignGapWitness,
    TrivialK,
    bounded_consistency_test,
    classify_classical,
    classify_hermite,
    classify_laguerre,
)
from .orthobasis import HERMITE, MONOMIAL, BasisId, laguerre
from .ratpoly import (
    DEFAULT_ISOLATION_TOLERANCE,
    IsolatingInterval,
    UniPoly,
    count_real_roots,
    is_real_rooted,
    square_free_part,
)
from .seqmodel import NONTRIVIAL, SequenceSpec, build_classical_Q, build_p, is_trivial
from .symbolic import symbol_basis_form, symbol_for_basis, symbol_p_form
from .transform import FuzzConfig, apply_diagonal, verify_preservation

DEFAULT_TRIALS_ENV = "MULTSEQ_DEFAULT_TRIALS"


class InternalInvariantError(RuntimeError):
    """Raised when a theorem-backed cross-check fails; reserved exit code 3."""


@dataclass(frozen=True)
class Command:
    verb: str
    basis: Optional[BasisId]
    sequence: Optional[SequenceSpec]
    options: dict


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def _rational_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _parse_coeff_list(text: str, what: str) -> list:
    out = []
    for token in text.split(","):
        token = token.strip()
        try:
            out.append(Fraction(token))
        except (ValueError, ZeroDivisionError):
            raise argparse.ArgumentTypeError(f"bad {what} entry: {token!r}")
    return out


def _sequence_arg(text: str) -> tuple:
    if ":" not in text:
        raise argparse.ArgumentTypeError(
            f"sequence must look like 'poly:...' or 'list:...', got {text!r}")
    kind, _, body = text.partition(":")
    if kind not in ("poly", "list"):
        raise argparse.ArgumentTypeError(f"unknown sequence kind: {kind!r}")
    return kind, _parse_coeff_list(body, "sequence")


def _poly_arg(text: str) -> UniPoly:
    return UniPoly(_parse_coeff_list(text, "polynomial"), var="x")


def _default_trials() -> int:
    raw = os.environ.get(DEFAULT_TRIALS_ENV)
    if raw is None:
        return 200
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"{DEFAULT_TRIALS_ENV} must be an integer, got {raw!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"{DEFAULT_TRIALS_ENV} must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multseq",
        description="Classify diagonal root-preserving operators in monomial, "
                    "Laguerre and Hermite bases, with checkable certificates.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_common(p, need_seq=True):
        p.add_argument("--basis", required=True,
                       choices=("monomial", "laguerre", "hermite"))
        p.add_argument("--alpha", type=_rational_arg, default=None,
                       help="Laguerre parameter, a rational > -1")
        if need_seq:
            p.add_argument("--seq", required=True, type=_sequence_arg,
                           help="poly:c0,c1,... or list:v0,v1,...")
            p.add_argument("--complete", action="store_true",
                           help="explicit list: unlisted entries are zero")
        p.add_argument("--timing", action="store_true",
                       help="include wall-clock timing_ms in the report")

    p = sub.add_parser("classify", help="classify the sequence")
    add_common(p)
    p.add_argument("--tolerance", type=_rational_arg,
                   default=DEFAULT_ISOLATION_TOLERANCE)
    p.add_argument("--degree-cap", type=int, default=None,
                   help="bounded-test cap for explicit prefixes")

    p = sub.add_parser("apply", help="apply the diagonal operator")
    add_common(p)
    p.add_argument("--poly", required=True, type=_poly_arg,
                   help="input polynomial coefficients c0,c1,...")

    p = sub.add_parser("verify", help="classify, then fuzz root preservation")
    add_common(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--max-degree", type=int, default=8)
    p.add_argument("--tolerance", type=_rational_arg,
                   default=DEFAULT_ISOLATION_TOLERANCE)
    p.add_argument("--degree-cap", type=int, default=None)

    p = sub.add_parser("symbol", help="emit the truncated operator symbol")
    add_common(p)
    p.add_argument("--order", type=int, default=8)

    p = sub.add_parser("certify", help="re-check a stored report")
    p.add_argument("--report", default="-",
                   help="path of a JSON report; '-' reads stdin")
    p.add_argument("--timing", action="store_true")
    return parser


#: Options whose values may begin with '-' (negative rationals/integers);
#: fused to --opt=value so argparse does not mistake the value for a flag.
_DASH_VALUE_OPTS = ("--alpha", "--tolerance", "--poly", "--seed")


def _fuse_negative_values(argv):
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok in _DASH_VALUE_OPTS and nxt is not None \
                and nxt.startswith("-") and len(nxt) > 1 \
                and (nxt[1].isdigit() or nxt[1] == "."):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def parse_args(argv) -> Command:
    parser = build_parser()
    ns = parser.parse_args(_fuse_negative_values(list(argv)))
    if ns.verb == "certify":
        return Command("certify", None, None, {"report": ns.report,
                                               "timing": ns.timing})
    if ns.basis == "laguerre":
        if ns.alpha is None:
            parser.error("--basis laguerre requires --alpha")
        if ns.alpha <= -1:
            parser.error(f"alpha out of range: {ns.alpha} (need alpha > -1)")
        basis = laguerre(ns.alpha)
    else:
        if ns.alpha is not None:
            parser.error(f"--alpha is only meaningful with --basis laguerre")
        basis = MONOMIAL if ns.basis == "monomial" else HERMITE

    kind, coeffs = ns.seq
    if kind == "poly":
        sequence = SequenceSpec.from_polynomial(coeffs)
        if ns.complete:
            parser.error("--complete applies only to list: sequences")
    else:
        sequence = SequenceSpec.from_values(coeffs, complete=ns.complete)

    options = {"timing": ns.timing}
    for name in ("tolerance", "degree_cap", "seed", "trials", "max_degree",
                 "order", "poly"):
        if hasattr(ns, name):
            options[name] = getattr(ns, name)
    if ns.verb == "verify" and options.get("trials") is None:
        options["trials"] = _default_trials()
    return Command(ns.verb, basis, sequence, options)


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------


def _basis_json(basis: BasisId) -> dict:
    out = {"kind": basis.kind}
    if basis.alpha is not None:
        out["alpha"] = str(basis.alpha)
    return out


def _basis_from_json(obj: dict) -> BasisId:
    if obj["kind"] == "laguerre":
        return laguerre(Fraction(obj["alpha"]))
    return MONOMIAL if obj["kind"] == "monomial" else HERMITE


def _sequence_json(s: SequenceSpec) -> dict:
    if s.is_polynomial:
        return {"type": "poly", "coeffs": [str(c) for c in s.poly.coeffs]}
    return {"type": "list", "values": [str(v) for v in s.values],
            "complete": s.complete}


def _sequence_from_json(obj: dict) -> SequenceSpec:
    if obj["type"] == "poly":
        return SequenceSpec.from_polynomial([Fraction(c) for c in obj["coeffs"]])
    return SequenceSpec.from_values([Fraction(v) for v in obj["values"]],
                                    complete=bool(obj.get("complete", False)))


def _poly_json(p: UniPoly) -> list:
    return [str(c) for c in p.coeffs]


def _poly_from_json(obj) -> UniPoly:
    return UniPoly([Fraction(c) for c in obj], var="x")


def _interval_json(iv: IsolatingInterval) -> dict:
    return {"lo": str(iv.lo), "hi": str(iv.hi), "mult": iv.multiplicity}


def _interval_from_json(obj: dict) -> IsolatingInterval:
    return IsolatingInterval(Fraction(obj["lo"]), Fraction(obj["hi"]),
                             int(obj["mult"]))


def _certificate_json(cert) -> dict:
    if isinstance(cert, RootLocations):
        return {"kind": "root-locations",
                "roots": [_interval_json(iv) for iv in cert.intervals]}
    if isinstance(cert, OffendingRoot):
        return {"kind": "offending-root", "root": _interval_json(cert.interval)}
    if isinstance(cert, NonrealPairWitness):
        return {"kind": "nonreal-pair-witness",
                "real_root_count": cert.real_root_count,
                "square_free_degree": cert.square_free_degree}
    if isinstance(cert, SignGapWitness):
        return {"kind": "sign-gap-witness",
                "indices": list(cert.indices),
                "values": [str(v) for v in cert.values]}
    if isinstance(cert, MonotonicityWitness):
        return {"kind": "monotonicity-witness", "index": cert.index,
                "value": str(cert.value), "next_value": str(cert.next_value)}
    if isinstance(cert, TrivialK):
        return {"kind": "trivial", "k": cert.k}
    if isinstance(cert, ConsistencyBound):
        return {"kind": "consistency-bound", "degree_cap": cert.degree_cap}
    if isinstance(cert, Counterexample):
        return {
            "kind": "counterexample",
            "input": _poly_json(cert.input_poly),
            "input_roots": None if cert.input_roots is None
            else [str(r) for r in cert.input_roots],
            "image": _poly_json(cert.image_poly),
            "real_root_count": cert.real_root_count,
            "square_free_degree": cert.square_free_degree,
        }
    raise ValueError(f"unknown certificate type {type(cert)!r}")


def _grid_json(grid) -> list:
    return [[dx, dy, str(c)] for dx, dy, c in grid.terms()]


def classification_json(report: ClassificationReport, verb: str = "classify") -> dict:
    out = {
        "verb": verb,
        "basis": _basis_json(report.basis),
        "sequence": _sequence_json(report.sequence),
        "verdict": report.verdict.status,
        "reason": report.verdict.reason,
    }
    if report.normalization is not None:
        out["normalization"] = report.normalization
    if report.verdict.certificate is not None:
        out["certificate"] = _certificate_json(report.verdict.certificate)
    if report.derived:
        out["derived"] = {name: _poly_json(poly)
                          for name, poly in sorted(report.derived.items())}
    return out


# ---------------------------------------------------------------------------
# running commands
# ---------------------------------------------------------------------------


def _classify_for_basis(s: SequenceSpec, basis: BasisId, tolerance, degree_cap):
    if basis.kind == "laguerre":
        return classify_laguerre(s, basis.alpha, degree_cap=degree_cap,
                                 tolerance=tolerance)
    if basis.kind == "hermite":
        return classify_hermite(s, degree_cap=degree_cap, tolerance=tolerance)
    return classify_classical(s, degree_cap=degree_cap, tolerance=tolerance)


def run(cmd: Command) -> dict:
    """Execute a parsed command and return the JSON-serializable report."""
    started = time.monotonic()
    if cmd.verb == "classify":
        report = _classify_for_basis(cmd.sequence, cmd.basis,
                                     cmd.options["tolerance"],
                                     cmd.options["degree_cap"])
        out = classification_json(report)
    elif cmd.verb == "apply":
        image = apply_diagonal(cmd.sequence, cmd.basis, cmd.options["poly"])
        out = {
            "verb": "apply",
            "basis": _basis_json(cmd.basis),
            "sequence": _sequence_json(cmd.sequence),
            "input": _poly_json(cmd.options["poly"]),
            "image": _poly_json(image),
        }
    elif cmd.verb == "verify":
        report = _classify_for_basis(cmd.sequence, cmd.basis,
                                     cmd.options["tolerance"],
                                     cmd.options["degree_cap"])
        cfg = FuzzConfig(seed=cmd.options["seed"], trials=cmd.options["trials"],
                         max_degree=cmd.options["max_degree"])
        result = verify_preservation(cmd.sequence, cmd.basis, cfg)
        if report.verdict.status == "yes" and not result.passed:
            raise InternalInvariantError(
                "classifier accepted the sequence but fuzzing found a "
                f"counterexample at trial {result.trials}")
        out = classification_json(report, verb="verify")
        out["fuzz"] = result.status
        out["trials"] = result.trials
        out["options"] = {"seed": cmd.options["seed"],
                          "trials": cmd.options["trials"],
                          "max_degree": cmd.options["max_degree"]}
        if result.counterexample is not None:
            out["counterexample"] = _certificate_json(result.counterexample)
    elif cmd.verb == "symbol":
        order = cmd.options["order"]
        if order < 0:
            raise ValueError("order must be nonnegative")
        out = {
            "verb": "symbol",
            "basis": _basis_json(cmd.basis),
            "sequence": _sequence_json(cmd.sequence),
            "order": order,
        }
        if cmd.basis.kind == "laguerre":
            sb = symbol_basis_form(cmd.sequence, cmd.basis.alpha, order)
            sp = symbol_p_form(cmd.sequence, cmd.basis.alpha, order)
            out["basis_form"] = _grid_json(sb.grid)
            out["p_form"] = _grid_json(sp.grid)
            agree = sb.y_truncated(order) == sp.y_truncated(order)
            if not agree:
                raise InternalInvariantError("symbol forms disagree")
            out["forms_agree"] = agree
        else:
            out["symbol"] = _grid_json(symbol_for_basis(
                cmd.sequence, cmd.basis, order).grid)
    elif cmd.verb == "certify":
        raw = cmd.options["report"]
        if raw == "-":
            text = sys.stdin.read()
        else:
            with open(raw, "r", encoding="utf-8") as fh:
                text = fh.read()
        try:
            report = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed report: {exc}") from exc
        out = {
            "verb": "certify",
            "checked_verb": report.get("verb"),
            "certified": certify_report(report),
        }
    else:  # pragma: no cover
        raise ValueError(f"unknown verb {cmd.verb!r}")
    if cmd.options.get("timing"):
        out["timing_ms"] = int((time.monotonic() - started) * 1000)
    return out


# ---------------------------------------------------------------------------
# certificate re-checking
# ---------------------------------------------------------------------------


def _recompute_test_polynomial(basis: BasisId, s: SequenceSpec,
                               normalization: Optional[str]):
    """(polynomial, admissible range) behind a classify certificate."""
    if basis.kind == "laguerre":
        return build_p(s, basis.alpha), (Fraction(-1), Fraction(0))
    if normalization is not None:
        s = _classify._normalize_sequence(s, normalization)
    return build_classical_Q(s), (None, Fraction(0))


def _check_interval_isolates(poly: UniPoly, iv: IsolatingInterval) -> bool:
    """The interval contains exactly one distinct root of poly, with the
    claimed multiplicity, checked by evaluation and Sturm recount."""
    if iv.is_point:
        if poly(iv.lo) != 0:
            return False
    else:
        free = square_free_part(poly)
        if (free(iv.lo) > 0) == (free(iv.hi) > 0):
            return False
        if count_real_roots(poly, (iv.lo, iv.hi)) != 1:
            return False
    from .ratpoly import square_free_decomposition
    for factor, mult in square_free_decomposition(poly):
        if factor.degree >= 1 and count_real_roots(factor, (iv.lo, iv.hi)) == 1:
            return mult == iv.multiplicity
    return False


def _in_range(x: Fraction, rng) -> bool:
    lo, hi = rng
    return (lo is None or lo <= x) and x <= hi


def _interval_inside(iv: IsolatingInterval, rng) -> bool:
    return _in_range(iv.lo, rng) and _in_range(iv.hi, rng)


def _interval_outside(iv: IsolatingInterval, rng) -> bool:
    lo, hi = rng
    return iv.lo > hi or (lo is not None and iv.hi < lo)


def _certify_classify(report: dict) -> bool:
    basis = _basis_from_json(report["basis"])
    s = _sequence_from_json(report["sequence"])
    status = report["verdict"]
    cert = report.get("certificate")
    if cert is None:
        return status == "undetermined"
    kind = cert["kind"]

    if kind == "trivial":
        if status != "yes":
            return False
        k = cert["k"]
        if s.is_polynomial:
            return s.poly.is_zero
        if not s.complete:
            return False
        return all(v == 0 for n, v in enumerate(s.values) if n not in (k, k + 1))

    if kind in ("root-locations", "offending-root", "nonreal-pair-witness"):
        poly, rng = _recompute_test_polynomial(basis, s,
                                               report.get("normalization"))
        if "derived" in report:
            expect = {"p": "p", "Q": "Q"}
            for name, coeffs in report["derived"].items():
                if [str(c) for c in poly.coeffs] != coeffs:
                    return False
        if kind == "nonreal-pair-witness":
            if status != "no":
                return False
            free = square_free_part(poly)
            count = count_real_roots(free)
            return (count == cert["real_root_count"]
                    and free.degree == cert["square_free_degree"]
                    and count < free.degree)
        if kind == "offending-root":
            if status != "no":
                return False
            iv = _interval_from_json(cert["root"])
            return _check_interval_isolates(poly, iv) and _interval_outside(iv, rng)
        # root-locations
        if status != "yes":
            return False
        intervals = [_interval_from_json(obj) for obj in cert["roots"]]
        if poly.degree == 0:
            ok = not intervals
        else:
            if count_real_roots(poly) != len(intervals):
                return False
            for a, b in zip(intervals, intervals[1:]):
                if a.hi >= b.lo:
                    return False
            ok = all(_check_interval_isolates(poly, iv) and _interval_inside(iv, rng)
                     for iv in intervals)
            total_mult = sum(iv.multiplicity for iv in intervals)
            ok = ok and total_mult <= poly.degree \
                and (poly.degree - total_mult) % 2 == 0
        if not ok:
            return False
        if basis.kind == "hermite":
            return _recheck_hermite_side_conditions(report, s)
        return True

    if kind == "sign-gap-witness":
        if status != "no":
            return False
        indices = [int(i) for i in cert["indices"]]
        values = [Fraction(v) for v in cert["values"]]
        if [s.value(i) for i in indices] != values:
            return False
        entries = list(zip(indices, values))
        if len(entries) == 3 and values[0] != 0 and values[1] == 0 \
                and values[2] != 0 and indices[0] < indices[1] < indices[2]:
            return True
        return _classify._sign_pattern_violation(entries) is not None

    if kind == "monotonicity-witness":
        if status != "no":
            return False
        norm = report.get("normalization") or "identity"
        normalized = _classify._normalize_sequence(s, norm)
        n = int(cert["index"])
        value, nxt = Fraction(cert["value"]), Fraction(cert["next_value"])
        if normalized.value(n) != value or normalized.value(n + 1) != nxt:
            return False
        if not value > nxt:
            return False
        return is_trivial(s).status == NONTRIVIAL

    if kind == "consistency-bound":
        if status != "undetermined":
            return False
        cap = int(cert["degree_cap"])
        return bounded_consistency_test(s, basis, cap).status == "consistent"

    if kind == "counterexample":
        if status != "no":
            return False
        return _certify_counterexample(cert, s, basis)

    raise ValueError(f"unknown certificate kind {kind!r}")


def _certify_counterexample(cert: dict, s: SequenceSpec, basis: BasisId) -> bool:
    poly = _poly_from_json(cert["input"])
    image = _poly_from_json(cert["image"])
    if cert.get("input_roots") is not None:
        roots = [Fraction(r) for r in cert["input_roots"]]
        if UniPoly.from_roots(roots, scale=poly.leading_coefficient,
                              var="x") != poly:
            return False
    elif not is_real_rooted(poly):
        return False
    if apply_diagonal(s, basis, poly) != image:
        return False
    if image.is_zero or image.degree == 0:
        return False
    free = square_free_part(image)
    count = count_real_roots(free)
    return (count == int(cert["real_root_count"])
            and free.degree == int(cert["square_free_degree"])
            and count < free.degree)


def _recheck_hermite_side_conditions(report: dict, s: SequenceSpec) -> bool:
    """For a Hermite yes-verdict: sequence nonnegative after the recorded
    normalization and nondecreasing over the available range."""
    norm = report.get("normalization") or "identity"
    normalized = _classify._normalize_sequence(s, norm)
    if normalized.is_polynomial:
        p = normalized.poly
        if not _classify.poly_nonnegative_on_naturals(p):
            return False
        diff = p.compose(UniPoly((1, 1), var="n")) - p
        return _classify.poly_nonnegative_on_naturals(diff)
    vals = list(normalized.values)
    if any(v < 0 for v in vals):
        return False
    return all(a <= b for a, b in zip(vals, vals[1:]))


def certify_report(report: dict) -> bool:
    """Re-check a report independently of the code path that produced it."""
    if not isinstance(report, dict) or "verb" not in report:
        raise ValueError("malformed report: missing verb")
    verb = report["verb"]
    if verb == "classify":
        return _certify_classify(report)
    if verb == "apply":
        basis = _basis_from_json(report["basis"])
        s = _sequence_from_json(report["sequence"])
        image = apply_diagonal(s, basis, _poly_from_json(report["input"]))
        return _poly_json(image) == report["image"]
    if verb == "verify":
        basis = _basis_from_json(report["basis"])
        s = _sequence_from_json(report["sequence"])
        if not _certify_classify(report):
            return False
        if report["fuzz"] == "failed":
            return _certify_counterexample(report["counterexample"], s, basis)
        opts = report["options"]
        cfg = FuzzConfig(seed=int(opts["seed"]), trials=int(opts["trials"]),
                         max_degree=int(opts["max_degree"]))
        return verify_preservation(s, basis, cfg).status == report["fuzz"]
    if verb == "symbol":
        basis = _basis_from_json(report["basis"])
        s = _sequence_from_json(report["sequence"])
        order = int(report["order"])
        if basis.kind == "laguerre":
            sb = symbol_basis_form(s, basis.alpha, order)
            sp = symbol_p_form(s, basis.alpha, order)
            return (_grid_json(sb.grid) == report["basis_form"]
                    and _grid_json(sp.grid) == report["p_form"]
                    and sb.y_truncated(order) == sp.y_truncated(order))
        sym = symbol_for_basis(s, basis, order)
        return _grid_json(sym.grid) == report["symbol"]
    raise ValueError(f"report with verb {verb!r} is not certifiable")


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def main(argv=None) -> int:
    cmd = parse_args(sys.argv[1:] if argv is None else argv)
    try:
        report = run(cmd)
    except InternalInvariantError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    json.dump(report, sys.stdout, separators=(",", ":"))
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
