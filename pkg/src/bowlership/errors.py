"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` (for example
``"SCHEMA_VIOLATION"`` or ``"K_TOO_LARGE"``) so callers such as the CLI can
map failures to exit codes without parsing messages.
"""


class BowlershipError(Exception):
    """Domain error with a stable error code."""

    def __init__(self, code, message=""):
        self.code = code
        super().__init__(f"{code}: {message}" if message else code)


class IngestError(BowlershipError):
    pass


class StatsError(BowlershipError, ValueError):
    pass


class GraphError(BowlershipError, ValueError):
    pass
