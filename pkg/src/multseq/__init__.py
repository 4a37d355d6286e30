"""Exact classification of diagonal root-preserving operators.

A diagonal operator scales the n-th element of a polynomial basis by
lambda_n.  This package decides, in exact rational arithmetic, whether such
an operator maps every real-rooted polynomial to a real-rooted polynomial,
for the monomial basis, the generalized Laguerre bases (alpha > -1) and the
Hermite basis, and backs every verdict with an independently checkable
certificate (root isolating intervals, a witness polynomial, or an explicit
consistency bound).
"""

from .ratpoly import (
    DEFAULT_ISOLATION_TOLERANCE,
    IsolatingInterval,
    NEG_INFINITY,
    Rational,
    UniPoly,
    count_real_roots,
    is_real_rooted,
    isolate_real_roots,
    poly_gcd,
    rational,
    sign_semidefinite_on_reals,
    square_free_part,
    zeros_within,
)
from .orthobasis import (
    BasisExpansion,
    BasisId,
    HERMITE,
    MONOMIAL,
    assemble_from_basis,
    basis_polynomial,
    expand_in_basis,
    hermite_polynomial,
    laguerre,
    laguerre_polynomial,
)
from .seqmodel import (
    DeltaCoefficients,
    SequenceSpec,
    binomial_invert,
    build_classical_Q,
    build_p,
    is_trivial,
    lambda_from_delta,
    strs_coefficients,
)
from .classify import (
    ClassificationReport,
    Verdict,
    bounded_consistency_test,
    classify_classical,
    classify_hermite,
    classify_laguerre,
)
from .transform import (
    Counterexample,
    FuzzConfig,
    apply_diagonal,
    random_real_rooted,
    search_counterexample,
    verify_preservation,
)
from .symbolic import (
    BiPoly,
    SymbolTruncation,
    hermite_symbol,
    pencil_q,
    pencil_stability,
    proper_position,
    substituted_p,
    symbol_basis_form,
    symbol_p_form,
    wronskian,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
