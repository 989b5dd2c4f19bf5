"""Exception hierarchy shared by every module of the package."""


class BDError(Exception):
    """Base class for all errors raised by bdlogic."""


class ParseError(BDError):
    """Malformed concrete syntax. ``position`` is a 0-based character offset."""

    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class SignatureError(BDError):
    """A formula or declaration does not fit its signature."""


class UndeclaredSymbolError(SignatureError):
    pass


class ArityError(SignatureError):
    pass


class ValidationError(BDError):
    """A value violates the invariants of its type (language, structure, query ...)."""


class ResourceLimitError(BDError):
    """An enumeration would exceed a configured ceiling."""

    def __init__(self, message, needed=None, limit=None):
        self.needed = needed
        self.limit = limit
        super().__init__(message)


class RuleError(BDError):
    """Unknown inference rule, or a rule not admitted by the chosen system."""
