"""Exception and warning types shared across the package."""


class ExpBasisError(Exception):
    """Base class for all package errors."""


class InputError(ExpBasisError):
    """Invalid input or violated precondition (CLI exit code 2)."""


class DegeneracyError(ExpBasisError):
    """Numerical degeneracy detected during a computation (CLI exit code 1)."""


class IllConditioningWarning(UserWarning):
    """Results are returned but their conditioning is poor."""


class CancellationWarning(UserWarning):
    """A difference-quotient route is losing significant digits."""
