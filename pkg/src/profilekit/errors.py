"""Exception hierarchy shared by every module."""


class ProfileKitError(Exception):
    """Base class for all errors raised by profilekit."""


class InputError(ProfileKitError, ValueError):
    """Malformed or out-of-range input (bad vertex id, bad parameter)."""


class BudgetError(ProfileKitError):
    """An exact computation would exceed its configured budget."""


class StructureError(ProfileKitError):
    """A tree or tree representation is malformed."""


class DomainError(ProfileKitError):
    """The input is well formed but outside the operation's domain."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionError(ProfileKitError):
    """A checked precondition failed; ``witness`` carries the evidence."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ParseError(InputError):
    """A text format could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
