"""Exception types shared across the package.

Three failure categories are distinguished so that callers (and the CLI
exit-code mapping) can react differently: bad arguments, evaluation outside
the admissible domain, and numerical breakdown inside an algorithm.
"""


class InputError(ValueError):
    """Malformed or inadmissible input (bad config, violated precondition)."""


class DomainError(ValueError):
    """Evaluation requested outside the admissible domain (non-finite data)."""


class NumericsError(RuntimeError):
    """A numerical routine failed to reach its tolerance (with diagnostic)."""
