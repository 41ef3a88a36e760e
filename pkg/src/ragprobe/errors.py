"""Exception taxonomy shared across the package."""

from __future__ import annotations


class RagProbeError(Exception):
    """Base class for all errors raised by this package."""


# --- corpus ---------------------------------------------------------------

class DirectoryNotFound(RagProbeError):
    pass


class EmptyCorpus(RagProbeError):
    pass


class DecodeError(RagProbeError):
    pass


class CountExceedsCorpus(RagProbeError):
    pass


class InsufficientChunks(RagProbeError):
    pass


class DuplicateKey(RagProbeError):
    pass


# --- scenario config ------------------------------------------------------

class ParseError(RagProbeError):
    pass


class ValidationError(RagProbeError):
    """A config or object violates an invariant; carries the field path."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


# --- gateway --------------------------------------------------------------

class GatewayError(RagProbeError):
    pass


class AuthError(GatewayError):
    pass


class RateLimitExhausted(GatewayError):
    pass


class TransportError(GatewayError):
    pass


class RequestTimeout(GatewayError, TimeoutError):
    pass


# --- generation -----------------------------------------------------------

class TemplateMissing(RagProbeError):
    pass


class MalformedOutput(RagProbeError):
    pass


class MissingField(RagProbeError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"missing field: {name}")


class InvalidAnswer(RagProbeError):
    pass


class GenerationBudgetExhausted(RagProbeError):
    """Raised when the LLM-call budget ran out before `count` valid pairs existed.

    Carries the valid pairs obtained so far so callers can persist a partial
    dataset.
    """

    def __init__(self, requested: int, obtained: int, pairs=None):
        self.requested = requested
        self.obtained = obtained
        self.pairs = list(pairs or [])
        super().__init__(f"obtained {obtained} of {requested} requested pairs")


# --- dataset / files ------------------------------------------------------

class IoError(RagProbeError):
    pass


class SchemaVersionMismatch(RagProbeError):
    pass


class InvariantViolation(RagProbeError):
    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


# --- rag adapter ----------------------------------------------------------

class MappingError(RagProbeError):
    pass


class PortUnavailable(RagProbeError):
    pass


# --- evaluator ------------------------------------------------------------

class UnparseableVerdict(RagProbeError):
    pass


class ScenarioMetricMismatch(RagProbeError):
    pass


# --- validity -------------------------------------------------------------

class AssignedChunkMissing(RagProbeError):
    def __init__(self, question_id: str, key):
        self.question_id = question_id
        self.key = key
        super().__init__(f"question {question_id}: assigned chunk {key} not in index")


# --- analytics ------------------------------------------------------------

class EmptyResults(RagProbeError):
    pass


class AllZeroDifferences(RagProbeError):
    pass
