"""Error taxonomy shared by the library and the CLI exit-code mapping."""


class SvccError(Exception):
    """Base class for errors raised by this package."""


class InputError(SvccError):
    """Bad user input: unreadable/malformed files, invalid generator or CLI
    parameters. CLI exit code 1."""


class VerificationError(SvccError):
    """A computed labeling disagrees with the oracle. CLI exit code 2."""


class InvariantError(SvccError):
    """An internal algorithm invariant was violated (monotonicity, star
    property at exit, pointer bounds). CLI exit code 3."""
