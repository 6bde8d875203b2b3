"""Exception taxonomy shared by every module.

InputError, UnsupportedError and DomainError signal problems with what the
caller asked for; NumericError and ResourceError signal that a computation
could not be completed reliably. The command line maps the first group to
exit code 1 and the second to exit code 2.
"""


class GraphZetaError(Exception):
    """Base class for all errors raised by this package."""


class InputError(GraphZetaError, ValueError):
    """Malformed or inconsistent input data or arguments."""


class UnsupportedError(GraphZetaError, ValueError):
    """The operation is not defined for the given object (e.g. irregular graph)."""


class DomainError(GraphZetaError, ValueError):
    """The evaluation point lies outside the operation's domain."""


class NumericError(GraphZetaError, RuntimeError):
    """A numeric procedure failed to converge or lost too much accuracy."""


class ResourceError(GraphZetaError, RuntimeError):
    """A configured size or resource cap would be exceeded."""
