"""Exception hierarchy shared by every module."""


class DegseqError(Exception):
    """Base class for all package errors."""


class InvalidInput(DegseqError, ValueError):
    pass


class InvalidDegree(InvalidInput):
    pass


class NotSimple(InvalidInput):
    pass


class NotGraphic(InvalidInput):
    pass


class ParityError(InvalidInput):
    pass


class IndexOutOfRange(InvalidInput):
    """The factor criterion index falls outside the sequence."""


class CriterionFails(InvalidInput):
    pass


class InvalidEdge(InvalidInput):
    pass


class InvalidCut(InvalidInput):
    pass


class InvalidParams(InvalidInput):
    pass


class ParseError(InvalidInput):
    pass


class SwapBlocked(InvalidInput):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class InvalidExchange(InvalidInput):
    pass


class ForbiddenGraph(InvalidInput):
    pass


class ForbiddenSequence(InvalidInput):
    pass


class OracleTooLarge(DegseqError):
    """A brute-force query exceeded its size or time budget."""


class SearchFailed(DegseqError):
    """Exchange search could not cover every anchor; ``partial`` holds what was found."""

    def __init__(self, message, partial=()):
        super().__init__(message)
        self.partial = list(partial)


class PackingFailed(DegseqError):
    pass


class RepairStuck(DegseqError):
    def __init__(self, message, cut=None):
        super().__init__(message)
        self.cut = cut


class ColoringDefect(DegseqError):
    """Recoloring failed where a coloring is guaranteed to exist."""


class TheoremViolation(DegseqError):
    """An internal assertion that a cited theorem guarantees has failed."""


class SearchStalled(DegseqError):
    pass
