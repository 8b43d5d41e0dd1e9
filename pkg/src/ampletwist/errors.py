"""Exception types shared across the package."""


class ValidationError(Exception):
    """A table failed an axiom check; ``witness`` holds the offending indices."""

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class SizeLimitExceeded(Exception):
    """An exhaustive enumeration would exceed its configured cap."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: {size} exceeds cap {cap}")
        self.size = size
        self.cap = cap


class NotIso(Exception):
    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class InconsistentVerdict(AssertionError):
    """Two independent routes to the same fact disagreed (a bug, never an input error)."""
