"""Exception hierarchy shared by all modules."""


class DomainError(ValueError):
    """A mathematically invalid request (bad rank, level, precondition...)."""


class ParseError(DomainError):
    """Syntax error in a word or presentation; carries the character offset."""

    def __init__(self, message, pos=None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)
