class DomainError(ValueError):
    """Input violates a mathematical precondition (CLI exit status 1)."""


class RingMismatchError(DomainError, TypeError):
    pass
