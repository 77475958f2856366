class InvalidInput(ValueError):
    """Raised when an operation's precondition is violated by its arguments."""


class CostGuardExceeded(InvalidInput):
    """Raised when a request exceeds an enumeration or size guard."""
