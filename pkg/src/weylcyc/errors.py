"""Exception types shared across the package."""


class WeylcycError(Exception):
    pass


class DimensionError(WeylcycError, ValueError):
    """Operands live in Weyl algebras (or matrix algebras) of different sizes."""


class DegreeError(WeylcycError, ValueError):
    """A chain or cochain was used at the wrong Hochschild degree."""


class CapExceeded(WeylcycError, RuntimeError):
    """A configured degree or expansion cap was hit."""


class ParseError(WeylcycError, ValueError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)

    def diagnostic(self):
        if self.text is None or self.position is None:
            return str(self)
        return f"{self}\n  {self.text}\n  {' ' * self.position}^"
