"""Error taxonomy shared across the library and the CLI exit-code contract."""


class SchemaError(ValueError):
    """Malformed input file or value grammar (CLI exit code 2)."""


class PreconditionError(ValueError):
    """An operation's stated precondition does not hold (CLI exit code 3)."""


class InternalConsistencyError(RuntimeError):
    """A mathematically impossible state: signals a bug (CLI exit code 4)."""
