"""Exception types shared across the package."""


class GraphParseError(ValueError):
    """Raised when an edge-list file cannot be parsed.

    The message always names the offending 1-based line number.
    """


class ContractError(ValueError):
    """A caller violated a documented precondition."""


class InvariantError(RuntimeError):
    """An internal invariant failed; indicates a bug, not bad input."""
