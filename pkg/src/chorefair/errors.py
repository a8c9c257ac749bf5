"""Exception hierarchy shared by the library and the CLI."""


class ChoreFairError(Exception):
    """Base class for all library errors."""


class UsageError(ChoreFairError, ValueError):
    """An argument is out of range or otherwise malformed."""


class ParameterError(UsageError):
    """A construction was asked for with parameters outside its domain."""


class ConditionNotMet(ChoreFairError):
    """An instance does not satisfy the ordinal condition a seeder requires."""


class PreconditionError(ChoreFairError):
    """A seeded partial allocation failed re-verification."""


class BudgetExceeded(ChoreFairError):
    """Exhaustive enumeration would exceed the configured budget."""

    def __init__(self, required, budget):
        super().__init__(f"enumeration needs {required} states, budget is {budget}")
        self.required = required
        self.budget = budget


class ImplementationFault(ChoreFairError, AssertionError):
    """An internal guarantee was violated. Always a bug."""
