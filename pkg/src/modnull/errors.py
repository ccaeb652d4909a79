"""Exception taxonomy shared by the library and the command line front end.

Two classes of failure are distinguished because the CLI maps them to
different exit codes: malformed input (bad files, bad flags, mismatched
lengths) exits 2, while mathematically undefined requests (degenerate
color distribution, odd stub count for a regular graph, enumeration
size guard) exit 3.
"""


class ModnullError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ModnullError):
    """Invalid or inconsistent input data (CLI exit code 2)."""


class DomainError(ModnullError):
    """Request outside the mathematical domain of an operation (CLI exit code 3)."""
