"""Exception types raised by the package."""


class AdmissibilityError(Exception):
    """Base class for every error raised here."""


class DimensionMismatch(AdmissibilityError, ValueError):
    pass


class SizeCapExceeded(AdmissibilityError, ValueError):
    def __init__(self, n, cap):
        super().__init__(f"matrix side {n} exceeds size cap {cap} (override with size_cap=...)")
        self.n = n
        self.cap = cap


class MatrixFormatError(AdmissibilityError, ValueError):
    """Malformed matrix or family JSON. ``field`` names the offending location."""

    def __init__(self, message, field=None, line=None):
        where = []
        if field is not None:
            where.append(f"field {field}")
        if line is not None:
            where.append(f"line {line}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)
        self.field = field
        self.line = line


class NotNilpotent(AdmissibilityError, ValueError):
    def __init__(self, message="matrix is not nilpotent", matrix=None):
        super().__init__(message)
        self.matrix = matrix


class NotCommuting(AdmissibilityError, ValueError):
    def __init__(self, i, j):
        super().__init__(f"generators {i} and {j} do not commute")
        self.pair = (i, j)


class NotSplitOverRationals(AdmissibilityError, ValueError):
    def __init__(self, message="characteristic polynomial has a non-rational root", generator=None):
        super().__init__(message)
        self.generator = generator


class OracleMismatch(AdmissibilityError, RuntimeError):
    """Two independent routes to the same quantity disagreed."""


class OverflowGuard(AdmissibilityError, ValueError):
    pass
