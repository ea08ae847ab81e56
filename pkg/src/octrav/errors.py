"""Exceptions shared across the solvers."""


class SearchTimeout(Exception):
    """A cooperative deadline passed before the search finished.

    ``lower`` and ``upper`` carry the bounds on the optimum known at that
    point when the caller can provide them (exact search only).
    """

    def __init__(self, message: str = "deadline exceeded", lower=None, upper=None, best=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
        self.best = best
