"""Exception types shared across the package."""


class MdsError(Exception):
    """Base class for all package-specific errors."""


class PoleError(MdsError):
    """Evaluation requested at (or numerically too close to) a pole."""


class ConvergenceError(MdsError):
    """Requested point lies outside the rigorous convergence regime."""


class ResourceLimitError(MdsError):
    """A sieve or table would exceed the configured memory bound."""


class EmptyPolyhedronError(MdsError):
    """H-representation defines the empty set."""


class DegeneratePolyhedronError(MdsError):
    """Polyhedron has no vertices (nontrivial lineality) or no generators."""


class UsageError(MdsError):
    """Malformed configuration or command-line input."""
