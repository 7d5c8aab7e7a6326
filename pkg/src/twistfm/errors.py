class InputError(ValueError):
    """Invalid arguments: wrong dimensions, violated preconditions, malformed data."""


class InvariantViolation(RuntimeError):
    """An internal invariant failed; indicates a bug rather than bad input."""
