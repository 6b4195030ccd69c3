class InvalidInputError(ValueError):
    """Raised when an argument violates a documented precondition."""


class SizeLimitError(RuntimeError):
    """Raised when an exhaustive search would exceed its documented cap."""
