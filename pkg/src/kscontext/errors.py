"""Exception hierarchy shared by all modules."""


class KSContextError(Exception):
    """Base class for every error raised by kscontext."""


class InvalidArgument(KSContextError, ValueError):
    pass


class NoCoverExists(KSContextError, ValueError):
    """The graph has an isolated vertex, so no edge cover can exist."""


class EmptyHyperedgeError(KSContextError, ValueError):
    """A construction produced a context with no outcomes."""


class BudgetExceeded(KSContextError, RuntimeError):
    """A search hit its node-expansion or subset budget before finishing."""


class UndefinedBeta(KSContextError, ValueError):
    """beta is undefined on KS-colourable scenarios."""


class Budget:
    """Counter shared across one search; ``None`` limit means unbounded."""

    def __init__(self, limit=None, what="search"):
        if limit is not None and limit <= 0:
            raise InvalidArgument("budget must be positive")
        self.limit = limit
        self.used = 0
        self.what = what

    def tick(self, n=1):
        self.used += n
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(f"{self.what} budget of {self.limit} exceeded")
