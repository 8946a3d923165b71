class DomainError(ValueError):
    """An input violates a mathematical precondition (CLI exit code 1)."""
