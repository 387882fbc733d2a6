"""Exception hierarchy for the evidentia package.

Every error raised by the library derives from EvidentiaError so callers
(CLI, HTTP service) can map failures to diagnostics in one place.
"""


class EvidentiaError(Exception):
    """Base class for all evidentia errors."""


# --- frame / focal set / mass construction ---

class EmptyFrame(EvidentiaError):
    """A frame of discernment needs at least one hypothesis."""


class DuplicateLabel(EvidentiaError):
    """Frame labels must be distinct."""


class FrameTooLarge(EvidentiaError):
    """Frames are bounded to 64 hypotheses (bitmask width)."""


class UnknownLabel(EvidentiaError):
    """A referenced label is not part of the frame."""


class EmptyFocalSet(EvidentiaError):
    """The empty set cannot carry mass."""


class BpaOutOfRange(EvidentiaError):
    """A basic probability assignment must lie in (0, 1]."""


class NotNormalized(EvidentiaError):
    """Masses of a basic probability assignment must sum to 1."""


class FrameMismatch(EvidentiaError):
    """Operands of a combination must share one frame of discernment."""


class TotalConflict(EvidentiaError):
    """Combined evidence is fully contradictory; normalization is undefined."""


# --- knowledge base documents ---

class KbError(EvidentiaError):
    """Base class for knowledge-base document problems."""


class KbSyntaxError(KbError):
    """Document is not well-formed; carries line/column of the failure."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class KbSchemaError(KbError):
    """Document is well-formed but violates the KB schema."""


class DuplicateRuleId(KbError):
    """Rule identifiers must be unique within a knowledge base."""


class UnknownDisease(KbError):
    """A rule references a hypothesis that is not declared."""


class EmptyDiseaseSet(KbError):
    """A rule must point at a non-empty set of hypotheses."""


class UnknownRuleId(EvidentiaError):
    """No rule with the given identifier exists in the knowledge base."""


# --- consultation sessions ---

class DuplicateSymptom(EvidentiaError):
    """A symptom can be asserted at most once per session."""


class NotAsserted(EvidentiaError):
    """Cannot retract a symptom that was never asserted."""


# --- persistence ---

class StoreLoadError(EvidentiaError):
    """A persisted session store could not be reloaded consistently."""
