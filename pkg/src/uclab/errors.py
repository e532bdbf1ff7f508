"""Exception hierarchy shared across the toolkit."""


class UclabError(Exception):
    """Base class for every error raised by this package."""


class EmptyGenerators(UclabError):
    """union_closure was called with no generators."""


class CapExceeded(UclabError):
    """An enumeration grew past its configured cap."""


class ParseError(UclabError):
    """A family file is malformed; carries the offending line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class PreconditionFailed(UclabError):
    """The input does not satisfy an operation's stated precondition."""


class ElementOutOfRange(UclabError):
    """Element index outside [1, universe_n]."""


class NoNonemptySet(UclabError):
    """Overlap density is undefined when the only member is the empty set."""


class DegenerateFamily(UclabError):
    """Statistic undefined for families with fewer than two members."""


class UnknownName(UclabError):
    """No reference family with the requested name."""


class BadN(UclabError):
    """Unusable universe size for the requested reference family."""


class InvalidParams(UclabError):
    """Block parameters violate a structural constraint."""


class BadM(UclabError):
    """Block count must be at least 2."""


class Infeasible(UclabError):
    """No valid (k, m, s) triple fits the requested universe size."""


class TooFewRecords(UclabError):
    """Band statistics need at least three sweep records."""


class InternalInconsistency(UclabError):
    """Two computations that must agree exactly returned different values."""
