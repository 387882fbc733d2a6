"""evidentia: Dempster-Shafer evidential reasoning with rule-based consultation.

The kernel (core) provides frames of discernment, mass functions and
Dempster's rule with conflict accounting; kb carries declarative
symptom -> hypothesis rules; engine folds asserted evidence into traced
consultation sessions; service and cli expose the whole over HTTP and a
terminal.
"""

from .core import (
    FocalSet,
    Frame,
    MassFunction,
    belief,
    combine,
    conflict,
    focal_set,
    full_set,
    make_frame,
    mass_function,
    plausibility,
    simple_support_mass,
    vacuous_mass,
)
from .engine import (
    CombinationStep,
    ConsultationSession,
    DiagnosisReport,
    ProductCell,
    ReportEntry,
    canonical_report_json,
    report_to_dict,
    start_session,
    step_to_dict,
)
from .errors import (
    BpaOutOfRange,
    DuplicateLabel,
    DuplicateRuleId,
    DuplicateSymptom,
    EmptyDiseaseSet,
    EmptyFocalSet,
    EmptyFrame,
    EvidentiaError,
    FrameMismatch,
    FrameTooLarge,
    KbError,
    KbSchemaError,
    KbSyntaxError,
    NotAsserted,
    NotNormalized,
    StoreLoadError,
    TotalConflict,
    UnknownDisease,
    UnknownLabel,
    UnknownRuleId,
)
from .kb import KnowledgeBase, SymptomRule, kb_frame, load_kb, parse_kb, rule_mass, serialize_kb

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # core
    "Frame", "FocalSet", "MassFunction",
    "make_frame", "focal_set", "full_set", "mass_function",
    "vacuous_mass", "simple_support_mass",
    "combine", "conflict", "belief", "plausibility",
    # kb
    "KnowledgeBase", "SymptomRule",
    "parse_kb", "serialize_kb", "load_kb", "kb_frame", "rule_mass",
    # engine
    "ConsultationSession", "CombinationStep", "ProductCell",
    "DiagnosisReport", "ReportEntry",
    "start_session", "canonical_report_json", "report_to_dict", "step_to_dict",
    # errors
    "EvidentiaError", "EmptyFrame", "DuplicateLabel", "FrameTooLarge",
    "UnknownLabel", "EmptyFocalSet", "BpaOutOfRange", "NotNormalized",
    "FrameMismatch", "TotalConflict",
    "KbError", "KbSyntaxError", "KbSchemaError", "DuplicateRuleId",
    "UnknownDisease", "EmptyDiseaseSet", "UnknownRuleId",
    "DuplicateSymptom", "NotAsserted", "StoreLoadError",
]
