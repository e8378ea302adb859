"""Exception hierarchy shared by the library and the command line."""


class TreeShiftError(Exception):
    """Base class for every error raised by :mod:`treeshift`."""


class ParseError(TreeShiftError, ValueError):
    """Malformed term or document."""


class MismatchError(TreeShiftError, ValueError):
    """Arity or alphabet of two objects do not fit together."""


class NotEssentialError(TreeShiftError, ValueError):
    """An operation that presumes an essential automaton got a non-essential one."""


class BudgetExceeded(TreeShiftError, RuntimeError):
    """A construction would exceed the caller-supplied size budget."""

    def __init__(self, what, limit):
        super().__init__(f"{what} exceeds budget of {limit}")
        self.what = what
        self.limit = limit


def check_budget(count, budget, what):
    if budget is not None and count > budget:
        raise BudgetExceeded(what, budget)
