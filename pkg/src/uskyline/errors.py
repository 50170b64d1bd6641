"""Exception types raised across the package."""


class UskylineError(Exception):
    """Base class for all package errors."""


class EdgeListParseError(UskylineError, ValueError):
    def __init__(self, message, line_number=None, path=None):
        self.line_number = line_number
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line_number is not None:
            where += f"{line_number}: "
        elif where:
            where += " "
        super().__init__(where + message)


class GraphValidationError(UskylineError, ValueError):
    """An edge weight or probability is out of its admissible range."""


class ConfigurationError(UskylineError, ValueError):
    """Invalid or missing configuration value."""


class UnknownVertexError(UskylineError, KeyError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"unknown vertex {vertex!r}")

    def __str__(self):
        return self.args[0]


class EnumerationLimitError(UskylineError):
    """Refusal to enumerate 2**m possible worlds for a graph that is too large."""

    def __init__(self, m, limit):
        self.m = m
        self.limit = limit
        super().__init__(
            f"graph has {m} edges; exhaustive world enumeration is limited to m <= {limit}"
        )


class StrategyError(UskylineError):
    """The query-selection seed pool is empty."""


class SelectionInfeasibleError(StrategyError):
    """No seed vertex with a large enough two-hop neighbourhood was found."""
