class CuboidError(Exception):
    """Base class for package errors."""


class CapacityError(CuboidError, OverflowError):
    """An edge is too large for the exact fixed-width arithmetic of the kernel."""

    def __init__(self, n, limit):
        super().__init__(f"edge N={n} exceeds the compiled kernel capacity (N <= {limit}); "
                         "use the pure-Python backend for larger edges")
        self.n = n
        self.limit = limit

    def __reduce__(self):
        return (type(self), (self.n, self.limit))


class InconsistentCuboidError(CuboidError):
    """A cuboid violated an internal algebraic identity."""


class MalformedRowError(CuboidError, ValueError):
    def __init__(self, field, line, detail=""):
        msg = f"malformed table row: bad {field} in {line!r}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.field = field
        self.line = line
        self.detail = detail

    def __reduce__(self):
        return (type(self), (self.field, self.line, self.detail))


class RowVerificationError(CuboidError, ValueError):
    def __init__(self, cuboid, line=None):
        super().__init__(f"row does not describe a valid primitive cuboid: {cuboid}")
        self.cuboid = cuboid
        self.line = line

    def __reduce__(self):
        return (type(self), (self.cuboid, self.line))


class CheckpointError(CuboidError):
    pass
