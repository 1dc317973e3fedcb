"""
Exception Classes

All library errors inherit from GrassmannianError for easy catching.
Orthogonality violations and failed certificates are reported as data,
not raised.
"""


class GrassmannianError(Exception):
    """Base exception for all library errors."""

    def __init__(self, message: str = "A Grassmannian toolkit error occurred"):
        self.message = message
        super().__init__(self.message)


class ContextMismatchError(GrassmannianError, ValueError):
    """Raised when two values live in different (n, k) contexts."""

    def __init__(self, message: str = "Context (n, k) mismatch"):
        super().__init__(message)


class NotInscribedError(GrassmannianError, ValueError):
    """Raised when an operation needs a diagram inside the k x (n-k) rectangle."""

    def __init__(self, message: str = "Diagram is not inscribed in the rectangle"):
        super().__init__(message)


class PreconditionError(GrassmannianError, ValueError):
    """Raised when an argument violates an operation's precondition."""

    def __init__(self, message: str = "Precondition violated"):
        super().__init__(message)


class ParseError(GrassmannianError, ValueError):
    """Raised when textual input (diagram or record) cannot be parsed."""

    def __init__(self, message: str = "Failed to parse input"):
        super().__init__(message)


class InconsistencyError(GrassmannianError):
    """Raised when two independent constructions disagree or a proven bound fails."""

    def __init__(self, message: str = "Internal consistency check failed"):
        super().__init__(message)


class UsageError(GrassmannianError, ValueError):
    """Raised when a command is missing parameters or names an unknown option."""

    def __init__(self, message: str = "Invalid command"):
        super().__init__(message)
