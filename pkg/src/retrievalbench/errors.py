"""Exception types shared across the package."""


class RetrievalBenchError(Exception):
    """Base class for all package errors."""


class InvalidSpec(RetrievalBenchError):
    """Task parameters violate a generator precondition (caller misconfiguration)."""


class TaxonomyExhausted(RetrievalBenchError):
    """A resume pool cannot supply enough distinct entries for the request."""


class MalformedTask(RetrievalBenchError):
    """Task criteria are inconsistent with its items (corrupted task data)."""


class FamilyMismatch(RetrievalBenchError):
    """Item and criteria come from different task families."""


class UnsupportedCombination(RetrievalBenchError):
    """The requested (kind, strategy) or simulator combination is not defined."""


class Transport(RetrievalBenchError):
    """Network-level failure talking to a model endpoint (retryable)."""


class RateLimited(Transport):
    """Endpoint reported rate limiting; retry with backoff."""


class BadResponse(RetrievalBenchError):
    """Endpoint returned a payload we cannot interpret (not retryable)."""


class ZeroVector(RetrievalBenchError):
    """Cosine similarity is undefined for a zero-norm vector."""


class MalformedLog(RetrievalBenchError):
    """A run log line cannot be parsed or lacks required fields."""


class EmptyGrid(RetrievalBenchError):
    """Grid expansion produced no valid cells."""
