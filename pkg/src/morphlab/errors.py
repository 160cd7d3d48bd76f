"""Exception types and default resource caps."""

DEFAULT_MAX_POINTS = 10**6
DEFAULT_MAX_GROUP_ORDER = 10**6
DEFAULT_MAX_CLASSES = 500
DEFAULT_MAX_SUBSPACES = 10**5


class ResourceCapError(RuntimeError):
    """A desk-scale cap would be exceeded."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class FalsificationError(AssertionError):
    """A checked consequence of the theory failed at some instance.

    ``report`` is a JSON-serialisable dict describing the instance.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = dict(report or {})
        self.report.setdefault("message", message)


class LatticeMismatchError(ValueError):
    pass
