"""Exception types shared across the package."""


class VclabError(Exception):
    """Base class for all package-specific errors."""


class GraphParseError(VclabError, ValueError):
    """Raised for malformed graph documents; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class QueryError(VclabError, ValueError):
    """Invalid connectivity query (equal endpoints, bad vertex, bad terminal set)."""


class SizeGuardError(VclabError, ValueError):
    """Instance exceeds the hard size limit of an exponential brute-force routine."""


class DemandError(VclabError, ValueError):
    """Demand edge set is not a subset of the graph's edges."""


class InconsistencyError(VclabError, RuntimeError):
    """Two routes to the same quantity disagreed; signals a solver bug."""
