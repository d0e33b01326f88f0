class MatrigidError(Exception):
    """Base class for errors raised by matrigid."""


class InvalidDimensionError(MatrigidError, ValueError):
    pass


class NotInSpaceError(MatrigidError, ValueError):
    pass


class ShapeMismatchError(MatrigidError, ValueError):
    pass


class UndefinedDirectionError(MatrigidError, ValueError):
    """A support functional was requested at the zero vector."""


class NonSmoothError(MatrigidError, ValueError):
    """The norm has more than one support functional at the given point."""


class NotWellPositionedError(MatrigidError):
    """Some edge of a framework sits at a non-smooth point of the norm."""

    def __init__(self, edges, message=None):
        self.edges = list(edges)
        super().__init__(message or f"framework is not well-positioned at edges {self.edges}")


class NotAdmissibleError(MatrigidError):
    """The rigid motions of this (space, norm) pair are not described by the theory."""


class DegenerateFrameworkError(MatrigidError, ValueError):
    """Adjacent vertices share a position, or the graph is not simple."""


class SparsityRangeError(MatrigidError, ValueError):
    pass


class OracleInvalidError(MatrigidError):
    """A finite-difference step crossed a non-smooth locus of the norm."""


class ConstructionError(MatrigidError, ValueError):
    """Construction parameters are out of range or retries were exhausted."""


class FileFormatError(MatrigidError, ValueError):
    """A framework or graph file failed to parse or validate."""

    def __init__(self, message, line=None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
