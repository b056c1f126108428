"""Exception types shared across the package."""


class NumericalError(RuntimeError):
    """A computation produced non-finite values or an unusable factorization."""


class SingularMatrixError(NumericalError):
    """Pivoted factorization met a pivot below the singularity tolerance."""

    def __init__(self, pivot_index, message=None):
        self.pivot_index = pivot_index
        super().__init__(message or f"matrix is numerically singular at pivot {pivot_index}")
