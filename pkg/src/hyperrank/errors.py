"""Exception hierarchy shared across the package."""


class HyperrankError(Exception):
    """Base class for all hyperrank errors."""


class UsageError(HyperrankError, ValueError):
    """Invalid command-line usage (unknown tags, malformed option values)."""


class DataError(HyperrankError, ValueError):
    """Malformed or unusable input data (bad files, disconnected graphs,
    invalid orders, unrecognized structure)."""


class ConvergenceError(HyperrankError, RuntimeError):
    """An iterative solver failed to reach its tolerance."""
