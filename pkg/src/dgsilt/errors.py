"""Exception types shared across the package."""

from __future__ import annotations


class DgsiltError(Exception):
    """Base class for all package errors."""


class InvalidQuiverError(DgsiltError):
    """A dg quiver failed validation; carries the offending report."""

    def __init__(self, report):
        self.report = report
        super().__init__("invalid dg quiver: " + "; ".join(v.message for v in report.violations))


class CyclicQuiverError(DgsiltError):
    """An operation needing a finite-dimensional path algebra got a cyclic quiver."""

    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        ids = " -> ".join(a.id for a in self.cycle)
        super().__init__(f"quiver has a directed cycle: {ids}")


class GlobalDimensionExceededError(DgsiltError):
    """Precondition gl.dim <= d violated; carries a witnessing arrow."""

    def __init__(self, d, arrow):
        self.d = d
        self.arrow = arrow
        super().__init__(
            f"global dimension exceeds {d}: arrow {arrow.id!r} has degree {arrow.degree}"
        )


class ResolutionCapExceededError(DgsiltError):
    """A semifree resolution did not terminate within its cell cap."""

    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"resolution did not terminate within cap {cap}")


class AlgebraMismatchError(DgsiltError):
    """Two objects over different base algebras were combined."""


class NonElementaryAlgebraError(DgsiltError):
    """H^0 modulo its radical is not a product of copies of the ground field."""


class QuiverParseError(DgsiltError):
    """Quiver file could not be parsed; carries a 1-based line number."""

    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")
