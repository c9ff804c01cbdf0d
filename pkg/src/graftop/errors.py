"""Shared exception types."""


class TreeError(ValueError):
    """Structural misuse: malformed trees, label clashes, foreign vertex refs."""


class ParseError(ValueError):
    """Rejected text input; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
