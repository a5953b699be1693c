"""Shared exception types.

ValueError is used for contract violations (bad arguments, wrong regime);
ConvergenceError for numerical procedures that cannot reach the requested
tolerance within their iteration caps.  The CLI maps the former to exit
code 1 and the latter to exit code 2.
"""


class ConvergenceError(RuntimeError):
    """A truncation or iteration could not reach the requested tolerance."""
