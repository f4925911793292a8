"""Exception types shared across the library."""


class ConvergenceError(RuntimeError):
    """An iterative factorization or solver exceeded its iteration budget.

    Carries enough context (sweep counts, residuals) to diagnose the input
    instead of hanging.
    """


class DataError(ValueError):
    """A data file or dataset specification could not be used as given."""
