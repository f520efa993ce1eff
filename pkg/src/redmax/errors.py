"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: invalid input -> 2, resource cap -> 3,
internal contradiction -> 4.
"""


class RedmaxError(Exception):
    pass


class InvalidInput(RedmaxError, ValueError):
    pass


class ResourceCapError(RedmaxError):
    pass


class InternalContradiction(RedmaxError):
    """A state that a proven statement rules out; always a bug or a discrepancy."""


class Unsupported(RedmaxError):
    pass
