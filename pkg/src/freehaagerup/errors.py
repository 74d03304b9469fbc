"""Exception types shared across the package."""


class SizeGuardError(ValueError):
    """A computation would exceed a configured size cap."""

    def __init__(self, what, value, cap):
        self.what = what
        self.value = value
        self.cap = cap
        super().__init__(f"{what} = {value} exceeds cap {cap}")


class TruncationError(ValueError):
    """A truncated cumulant table was queried beyond its order."""


class PreconditionError(ValueError):
    pass


class GramSingularError(ArithmeticError):
    def __init__(self, n, k):
        self.n = n
        self.k = k
        super().__init__(f"gram-singular({n},{k})")


class InconsistencyError(RuntimeError):
    """Two independent evaluation routes disagreed. Always a bug."""


class UndecidedError(RuntimeError):
    """Interval enclosure stayed too wide at the maximum precision."""

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)
