class DcsError(Exception):
    """Base class for errors reported back to the caller with an exit code"""

    exit_code = 2


class InvalidInputError(DcsError):
    pass


class SchemaError(InvalidInputError):
    def __init__(self, *args, path="$", **kwargs):
        super().__init__(*args, **kwargs)
        self.path = path

    def __str__(self):
        return f"{self.path}: {super().__str__()}"


class NotATreeError(InvalidInputError):
    pass


class UnsupportedError(DcsError):
    pass


class PreconditionError(DcsError):
    def __init__(self, *args, player=None, **kwargs):
        super().__init__(*args, **kwargs)
        self.player = player


class BudgetExceededError(DcsError):
    exit_code = 3

    def __init__(self, *args, what, needed, cap, **kwargs):
        super().__init__(*args, **kwargs)
        self.what = what
        self.needed = needed
        self.cap = cap

    def __str__(self):
        return f"{self.what} needs {self.needed}, over the configured cap of {self.cap}."


class InternalError(RuntimeError):
    """An invariant of the library itself was broken; never an input problem"""
