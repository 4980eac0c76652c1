"""Exception hierarchy shared across the library.

The CLI maps these to exit codes: ParseError -> 2,
PreconditionError (and its subclass SizeGuardError) -> 3,
InvariantError -> 4.
"""


class AlexlabError(Exception):
    pass


class ParseError(AlexlabError):
    """Syntax error in the presentation DSL, with position info."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class PreconditionError(AlexlabError):
    """An operation was called outside its documented precondition."""


class SizeGuardError(PreconditionError):
    """A documented size guard was exceeded."""


class InvariantError(AlexlabError):
    """An internal consistency check failed; indicates a library bug."""
