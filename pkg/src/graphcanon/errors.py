"""Exception types shared across the package."""


class GraphCanonError(Exception):
    """Base class for all package errors."""


class InvalidGraphError(GraphCanonError):
    """Graph construction or input violates the colored-graph invariants."""


class InvalidLabelingError(GraphCanonError):
    """A labeling is not a bijection onto 1..n or does not match the graph."""


class FormatError(GraphCanonError):
    """A cg/rs/graph6 document is malformed."""


class OracleCapacityError(GraphCanonError):
    """A brute-force oracle was asked to search beyond its configured size cap."""


class BackendCapacityError(GraphCanonError):
    """An invariant backend exceeded its configured memory or size cap."""


class ContractViolationError(GraphCanonError):
    """An operation was called with arguments violating its stated contract."""


class UnsupportedInputError(GraphCanonError):
    """Structurally valid input outside the supported class (e.g. disconnected)."""


class NoPolyhedralEmbeddingError(GraphCanonError):
    """Polyhedral-embedding machinery was requested for a graph that has none."""


class InvariantFailureError(GraphCanonError):
    """An invariant behaved incompletely where completeness is required."""
