"""Exception hierarchy shared by every module."""

from __future__ import annotations


class ISGError(Exception):
    """Base class for all library errors."""


class InvalidAlgebra(ISGError):
    """The input table is not a finite inverse semigroup."""

    witness: tuple = ()


class MalformedTable(InvalidAlgebra):
    def __init__(self, message: str):
        super().__init__(message)


class NotClosed(InvalidAlgebra):
    def __init__(self, row: int, col: int, value):
        self.witness = (row, col)
        super().__init__(f"entry table[{row}][{col}] = {value!r} is outside the carrier")


class NotAssociative(InvalidAlgebra):
    def __init__(self, a: int, b: int, c: int):
        self.witness = (a, b, c)
        super().__init__(f"(ab)c != a(bc) for a={a}, b={b}, c={c}")


class NotRegular(InvalidAlgebra):
    def __init__(self, a: int):
        self.witness = (a,)
        super().__init__(f"element {a} has no inverse")


class IdempotentsDoNotCommute(InvalidAlgebra):
    def __init__(self, e: int, f: int):
        self.witness = (e, f)
        super().__init__(f"idempotents {e} and {f} do not commute")


class NotClosedSubset(ISGError):
    def __init__(self, a: int, b: int | None, reason: str):
        self.witness = (a,) if b is None else (a, b)
        super().__init__(reason)


class ClosureNotSubsemigroup(ISGError):
    """Internal consistency failure: a set that must be closed is not."""


class InternalInconsistency(ISGError):
    """Two routes to the same mathematical object disagree."""


class ParentMismatch(ISGError):
    pass


class NotAbove(ISGError):
    def __init__(self, a: int, b: int):
        self.witness = (a, b)
        super().__init__(f"pair ({a}, {b}) lies in the lower congruence but not the upper one")


class InvalidWord(ISGError):
    pass


class EnumerationCapExceeded(ISGError):
    def __init__(self, cap: int, partial: list):
        self.cap = cap
        self.partial = partial
        super().__init__(f"congruence enumeration exceeded cap {cap}")


class DepthExceeded(ISGError):
    def __init__(self, depth: int, report=None):
        self.depth = depth
        self.report = report
        super().__init__(f"min network did not stabilize within depth {depth}")


class IndexOrder(ISGError):
    pass


class SizeUnsupported(ISGError):
    pass


class SizeExceeded(ISGError):
    pass


class LinkingMapNotHomomorphism(ISGError):
    pass


class LinkingMapsDoNotCompose(ISGError):
    pass


class ParseError(ISGError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
