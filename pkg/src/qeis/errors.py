"""Exception hierarchy shared by all qeis modules.

The CLI maps these onto its exit-code contract: validation failures exit
with 2, internal consistency failures (a closed form disagreeing with an
independent route) with 3, and blown enumeration budgets with 4.
"""


class QeisError(Exception):
    """Base class for all qeis errors."""


class ValidationError(QeisError):
    """Input violates a documented precondition."""


class InternalConsistencyError(QeisError):
    """Two supposedly equivalent computation paths disagree.

    Raised only for conditions that indicate a corrupted value or a bug,
    never for bad user input.
    """


class ResourceBudgetError(QeisError):
    """An enumeration or table build would exceed the configured budget."""


class NumericError(QeisError):
    """A floating-point routine failed to converge to its stated tolerance."""
