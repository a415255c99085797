"""Exception hierarchy.

Input problems (bad files, bad parameters, semantic validation failures)
derive from :class:`InputError`; violated internal invariants raise
:class:`InternalError`.  The CLI maps these to exit codes 2 and 3.
"""


class BcastError(Exception):
    """Base class for all errors raised by this package."""


class InputError(BcastError):
    """Base class for invalid user input."""


class GraphFormatError(InputError):
    """Malformed graph or witness file."""


class SelfLoopError(InputError):
    """Edge with identical endpoints."""


class DuplicateEdgeError(InputError):
    """The same unordered vertex pair appears twice."""


class InvalidWeightError(InputError):
    """Edge weight is missing, non-integer, or < 1."""


class DisconnectedGraphError(InputError):
    """Input graph is not connected."""


class WitnessFormatError(InputError):
    """Malformed broadcast witness file."""


class UnknownVertexError(InputError):
    """A broadcast references a vertex that is not in the graph."""


class ParameterError(InputError):
    """Out-of-range numeric parameter (p, k, epsilon, threads, ...)."""


class DecompositionFormatError(InputError):
    """Malformed .td file."""


class InvalidDecompositionError(InputError):
    """A (nice) tree decomposition violates one of its defining properties."""


class OracleCapError(InputError):
    """Instance exceeds the brute-force size cap."""


class TransformError(InputError):
    """Broadcast transform preconditions not met."""


class ReductionInputError(InputError):
    """Invalid input to a hardness-instance generator."""


class InternalError(BcastError):
    """An internal invariant failed; indicates a bug, not bad input."""
