"""Exception types shared across the engine."""
from __future__ import annotations


class FoldscopeError(Exception):
    """Base class for every error raised by this package."""


class ParseError(FoldscopeError):
    """Problem in an input file. Carries a 1-based line number when known."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class MalformedLine(ParseError):
    pass


class UnknownStain(ParseError):
    pass


class HeaderMissing(ParseError):
    pass


class BadStrand(ParseError):
    pass


class DuplicateSymbol(ParseError):
    pass


class BadColor(ParseError):
    pass


class ColorConflict(ParseError):
    pass


class OverlapDetected(ParseError):
    """Two bands of one chromosome claim overlapping base pairs."""

    def __init__(self, chromosome: str, band_a: str, band_b: str):
        super().__init__(f"bands {band_a!r} and {band_b!r} overlap on chromosome {chromosome}")
        self.chromosome = chromosome
        self.band_a = band_a
        self.band_b = band_b


class GapDetected(ParseError):
    """The bands of a chromosome leave uncovered base pairs."""

    def __init__(self, chromosome: str, position: int):
        super().__init__(f"chromosome {chromosome} has no band covering position {position}")
        self.chromosome = chromosome
        self.position = position


# -- model construction and lookup ------------------------------------------

class UnknownChromosome(FoldscopeError):
    pass


class GeneOutsideChromosome(FoldscopeError):
    pass


class UnknownGeneSymbol(FoldscopeError):
    pass


class PositionOutOfRange(FoldscopeError):
    pass


class MalformedBands(FoldscopeError):
    """Band rows that parse but cannot form a valid region hierarchy."""


# -- fold state --------------------------------------------------------------

class UnknownRegion(FoldscopeError):
    pass


class UnknownSubsection(FoldscopeError):
    pass


class ParentNotOpen(FoldscopeError):
    pass


class SubsectionNotOpen(FoldscopeError):
    pass


# -- insets ------------------------------------------------------------------

class UnknownInset(FoldscopeError):
    pass


class InsetLocked(FoldscopeError):
    pass


class RegionNotInScope(FoldscopeError):
    pass


class ZeroLengthScope(FoldscopeError):
    pass


# -- tasks and metrics -------------------------------------------------------

class NoFeasibleTask(FoldscopeError):
    pass


class AnswerTypeMismatch(FoldscopeError):
    pass


class UnknownPhenotype(FoldscopeError):
    pass


class IntervalOutOfRange(FoldscopeError):
    pass
