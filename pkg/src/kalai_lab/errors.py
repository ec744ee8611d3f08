"""Exception hierarchy shared by every module of the workbench."""


class KalaiLabError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateInput(KalaiLabError):
    """Input points or inequalities do not span a full-dimensional polytope."""


class Unbounded(KalaiLabError):
    """An inequality system has a nontrivial recession cone."""


class OriginNotInterior(KalaiLabError):
    pass


class NotLocallyAntiBlocking(KalaiLabError):
    pass


class NotProper(KalaiLabError):
    pass


class NotUnconditional(KalaiLabError):
    pass


class ImproperFace(KalaiLabError):
    """The face passed in is empty or the whole polytope where a proper face is needed."""


class NotQuadrilateral(KalaiLabError):
    pass


class SectionNotQuadrilateral(KalaiLabError):
    def __init__(self, i: int, j: int, n_vertices: int):
        super().__init__(
            f"section on coordinates ({i + 1}, {j + 1}) has {n_vertices} vertices, not 4"
        )
        self.pair = (i, j)
        self.n_vertices = n_vertices


class CertificationFailure(KalaiLabError):
    """A numerically located special point could not be certified."""


class InvariantViolation(KalaiLabError):
    """A mathematically guaranteed property failed to hold; this indicates a bug."""


class Unclassifiable(InvariantViolation):
    pass


class ReconstructionMismatch(InvariantViolation):
    pass


class UnknownTarget(KalaiLabError):
    pass
