"""Local invariants of elliptic curves over unramified p-adic fields:
minimal models, Kodaira types, conductors, p-isogenies, formal groups, and
the differential pullback invariant of a p-isogeny."""

from .exactnum import (
    INF,
    LocalFieldContext,
    NonIntegralError,
    Polynomial,
    SingularModelError,
    parse_rational,
    residue,
    valuation,
)
from .formalgroup import (
    default_order,
    formal_expansion,
    formal_height,
    formal_log,
    group_law,
    isogeny_series,
    multiplication_series,
    separability_shadow,
)
from .isogeny import (
    AlphaInvariant,
    IsogenyData,
    KernelError,
    alpha,
    division_polynomial,
    dual_isogeny,
    find_kernels,
    velu,
)
from .localdata import (
    KodairaType,
    LocalData,
    conductor_via_ogg,
    geometric_components,
    local_data,
    minimal_model,
    semistability_defect,
    tate_algorithm,
)
from .verify import (
    CorpusEntry,
    VerificationReport,
    analyze_entry,
    load_corpus,
    run_verification,
)
from .weierstrass import (
    StandardInvariants,
    Transformation,
    WeierstrassModel,
    find_isomorphism,
    invariants,
    transform,
)

__version__ = "1.0.0"
