"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-contract input (bad vertex id, broken format, ...)."""


class ResourceError(RuntimeError):
    """A configured resource cap (node budget, depth, table size) was hit.

    Carries whatever partial statistics the aborted computation collected.
    """

    def __init__(self, message, **stats):
        super().__init__(message)
        self.stats = dict(stats)
