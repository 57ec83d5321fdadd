"""
Exception hierarchy shared by the library and the command layer.

Every error carries a short category and the exit code the command line
reports for it.
"""


class GPKitError(Exception):
    """Base class for all errors raised by gpkit."""

    category = "error"
    exit_code = 1

    def __init__(self, message):
        super().__init__(message)
        self.message = message

    def one_line(self):
        """Return the machine-parsable single-line form used on stderr."""
        text = " ".join(str(self.message).split())
        return f"error[{self.category}]: {text}"


class ConfigurationError(GPKitError):
    """Invalid parameter vectors, structures, run configuration values."""

    category = "config"
    exit_code = 2


class ParseError(ConfigurationError):
    """Malformed kernel, mean or likelihood expression."""

    category = "parse"

    def __init__(self, message, offset=None, expected=()):
        self.offset = offset
        self.expected = tuple(expected)
        if offset is not None:
            message = f"syntax error at offset {offset}: {message}"
        super().__init__(message)


class InputError(GPKitError):
    """Inputs with the wrong shape or values outside a likelihood's support."""

    category = "data"
    exit_code = 3


class DataError(InputError):
    """Unreadable data files and cells that are not numbers."""

    def __init__(self, message, row=None, column=None):
        self.row = row
        self.column = column
        super().__init__(message)


class NumericalError(GPKitError):
    """A covariance matrix stayed indefinite after the jitter cap."""

    category = "numerical"
    exit_code = 4

    def __init__(self, message, jitter=None):
        self.jitter = jitter
        if jitter is not None:
            message = f"{message} (attempted jitter {jitter:.3g})"
        super().__init__(message)
