"""Precedential constraint: does a body of decided cases force a new outcome?

Four evaluators cover the flat/hierarchical and boolean-factor/dimension
settings, each returning a verdict with an optional derivation trace.
Case bases live in a JSON document format with validation, canonical
serialization, and a command-line interface.
"""

from .casebase_io import (
    CaseBaseDocument,
    CasebaseParseError,
    document_casebase,
    document_dimension_hierarchy,
    document_factor_hierarchy,
    load_casebase,
    parse_casebase,
    save_casebase,
    serialize_casebase,
    validate_document,
)
from .dimension_models import (
    BoundClaim,
    BoundDirection,
    DimCase,
    DimCaseBase,
    DimFactSituation,
    FlatDimCase,
    FlatDimCaseBase,
    dhrm_bound,
    dhrm_forces_outcome,
    drm_forces,
)
from .factor_models import (
    Case,
    FactorCaseBase,
    FactSituation,
    FlatCase,
    FlatFactorCaseBase,
    hrm_forces,
    rm_forces,
    satisfies,
)
from .hierarchy import (
    Dimension,
    DimensionHierarchy,
    Edge,
    FactorHierarchy,
    Literal,
    Polarity,
    Side,
    ValidationReport,
    Value,
    ValueOrder,
    Violation,
    validate_dimension_hierarchy,
    validate_factor_hierarchy,
    value_leq,
)
from .oracle import (
    CheckResult,
    ConsistencyReport,
    EnumerationCapError,
    check_consistency,
    encode_fact_situation,
    encode_factors_as_dimensions,
    enumerate_query_situations,
    flatten_dim_casebase,
    flatten_factor_casebase,
    lift_flat_casebase,
    lift_flat_dim_casebase,
)
from .trace import (
    DerivationTrace,
    ForcingResult,
    PrecedentAttempt,
    Rule,
    Status,
    Subgoal,
    render_trace,
    trace_depth,
    trace_from_dict,
    trace_to_dict,
)

__version__ = "0.1.0"

__all__ = [
    "BoundClaim",
    "BoundDirection",
    "Case",
    "CaseBaseDocument",
    "CasebaseParseError",
    "CheckResult",
    "ConsistencyReport",
    "DerivationTrace",
    "DimCase",
    "DimCaseBase",
    "DimFactSituation",
    "Dimension",
    "DimensionHierarchy",
    "Edge",
    "EnumerationCapError",
    "FactSituation",
    "FactorCaseBase",
    "FactorHierarchy",
    "FlatCase",
    "FlatDimCase",
    "FlatDimCaseBase",
    "FlatFactorCaseBase",
    "ForcingResult",
    "Literal",
    "Polarity",
    "PrecedentAttempt",
    "Rule",
    "Side",
    "Status",
    "Subgoal",
    "ValidationReport",
    "Value",
    "ValueOrder",
    "Violation",
    "check_consistency",
    "dhrm_bound",
    "dhrm_forces_outcome",
    "document_casebase",
    "document_dimension_hierarchy",
    "document_factor_hierarchy",
    "drm_forces",
    "encode_fact_situation",
    "encode_factors_as_dimensions",
    "enumerate_query_situations",
    "flatten_dim_casebase",
    "flatten_factor_casebase",
    "hrm_forces",
    "lift_flat_casebase",
    "lift_flat_dim_casebase",
    "load_casebase",
    "parse_casebase",
    "render_trace",
    "rm_forces",
    "satisfies",
    "save_casebase",
    "serialize_casebase",
    "trace_depth",
    "trace_from_dict",
    "trace_to_dict",
    "validate_dimension_hierarchy",
    "validate_document",
    "validate_factor_hierarchy",
    "value_leq",
    "__version__",
]
