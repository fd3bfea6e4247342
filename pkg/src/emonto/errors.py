"""Exception types shared across the package."""


class EmontoError(Exception):
    """Base class for every error raised by this package."""


class LoadError(EmontoError):
    """A data file is malformed or violates a structural invariant."""


class NotFoundError(EmontoError):
    """A lookup (emotion name, provider text, ...) has no entry."""


class SimilarityError(EmontoError):
    """Cosine computation is impossible (dimension mismatch, zero vector)."""


class DecisionError(EmontoError):
    """An annotation-decision set is inconsistent with the overlap records."""


class IncompleteDecisionError(DecisionError):
    """One or more overlapping terms have no decision."""


class StaleDecisionError(DecisionError):
    """A decision refers to a term or candidate that no longer overlaps."""


class UnresolvedTermError(DecisionError):
    """All three verifiers disagree on a term; needs human escalation."""


class BuildError(EmontoError):
    """A dependency builder could not finish (e.g. classifier failure)."""


class GuidanceError(EmontoError):
    """Empathetic guidance was asked for an unsupported emotion."""


class SerializationError(EmontoError):
    """The ontology cannot be written (dangling dependency endpoint)."""


class OwlParseError(EmontoError):
    """An OWL/XML document could not be read back into an ontology."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class OwlReferenceError(OwlParseError):
    """The document uses a class IRI that was never declared."""


class OwlTierError(OwlParseError):
    """A class sits deeper than the three supported tiers."""


class QuerySyntaxError(EmontoError):
    """A query string does not match any supported query form."""
