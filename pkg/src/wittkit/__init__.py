"""Exact decision procedures for quadratic forms over fields of
characteristic not 2.

The public surface is re-exported here: field descriptors, diagonal
forms, the Witt-theoretic deciders, Pfister-form structure tests,
hyperbolicity over function fields of quadrics, and the seeded
property-suite runner that checks the deciders against independent
oracles.
"""

from .decision import Decision
from .errors import (
    Degenerate,
    FieldMismatch,
    InconsistentInvariants,
    NonMonic,
    NotSquareFree,
    NotSymmetric,
    ParseError,
    SquareArgument,
    UnknownSuite,
    UnknownVariable,
    UnsupportedField,
    UnsupportedInput,
    VacuousSuite,
    WittkitError,
    ZeroElement,
    ZeroEntry,
)
from .fields import (
    FieldDesc,
    GFExt,
    LaurentExt,
    PrimeField,
    QQ,
    QuadExt,
    RatFuncExt,
    Rationals,
)
from .forms import (
    QForm,
    determinant,
    diag,
    diagonalize,
    discriminant,
    evaluate,
    format_form,
    hyperbolic_form,
    normalized,
    orth_sum,
    neg,
    scale,
    signature,
    tensor,
)
from .localglobal import (
    WittDecomposition,
    form_from_invariants,
    hasse_invariant,
    hilbert_symbol,
    in_G,
    in_H,
    is_hyperbolic,
    is_isometric,
    is_isotropic,
    is_subform,
    laurent_split,
    sample_D,
    sample_H,
    witt_complement,
    witt_decompose,
    witt_index,
)
from .pfister import (
    PfisterSpec,
    divide_by_pfister,
    in_In,
    neighbor_of,
    pf,
    pfister_expand,
    similar_to_pfister,
)
from .funcfield import (
    check_specialization_necessity,
    first_residue,
    hyperbolic_over_ff,
    ratfunc_hyperbolic,
    residue_places,
    second_residue,
    witt_index_over_quad_ext,
)
from .verify import (
    DEFAULT_SUITES,
    GenConfig,
    SuiteReport,
    Violation,
    run_suite,
    suite_catalogue,
)
from .cli import main, parse_field, parse_form, parse_pfister

__version__ = "0.1.0"

__all__ = [
    "Decision",
    "DEFAULT_SUITES",
    "Degenerate",
    "FieldDesc",
    "FieldMismatch",
    "GFExt",
    "GenConfig",
    "InconsistentInvariants",
    "LaurentExt",
    "NonMonic",
    "NotSquareFree",
    "NotSymmetric",
    "ParseError",
    "PfisterSpec",
    "PrimeField",
    "QForm",
    "QQ",
    "QuadExt",
    "RatFuncExt",
    "Rationals",
    "SquareArgument",
    "SuiteReport",
    "UnknownSuite",
    "UnknownVariable",
    "UnsupportedField",
    "UnsupportedInput",
    "VacuousSuite",
    "Violation",
    "WittDecomposition",
    "WittkitError",
    "ZeroElement",
    "ZeroEntry",
    "check_specialization_necessity",
    "determinant",
    "diag",
    "diagonalize",
    "discriminant",
    "divide_by_pfister",
    "evaluate",
    "first_residue",
    "form_from_invariants",
    "format_form",
    "hasse_invariant",
    "hilbert_symbol",
    "hyperbolic_form",
    "hyperbolic_over_ff",
    "in_G",
    "in_H",
    "in_In",
    "is_hyperbolic",
    "is_isometric",
    "is_isotropic",
    "is_subform",
    "laurent_split",
    "main",
    "neg",
    "neighbor_of",
    "normalized",
    "orth_sum",
    "parse_field",
    "parse_form",
    "parse_pfister",
    "pf",
    "pfister_expand",
    "ratfunc_hyperbolic",
    "residue_places",
    "run_suite",
    "sample_D",
    "sample_H",
    "scale",
    "second_residue",
    "signature",
    "similar_to_pfister",
    "suite_catalogue",
    "tensor",
    "witt_complement",
    "witt_decompose",
    "witt_index",
    "witt_index_over_quad_ext",
]
