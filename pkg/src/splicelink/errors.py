"""Exception hierarchy.

Every domain error carries a stable ``code`` used by the CLI's JSON error
documents.
"""


class SpliceError(Exception):
    code = "DOMAIN_ERROR"


class ParseError(SpliceError, ValueError):
    code = "PARSE_ERROR"


class InvalidChain(SpliceError, ValueError):
    code = "INVALID_CHAIN"


class ConstantCurve(SpliceError, ValueError):
    code = "CONSTANT_CURVE"


class LineCurve(SpliceError):
    """The parametrization is coordinate-equivalent to a line."""

    code = "LINE_CURVE"


class NonBirational(SpliceError):
    code = "NON_BIRATIONAL"


class InternalGapHit(SpliceError):
    code = "INTERNAL_GAP_HIT"


class ExpansionTruncated(SpliceError):
    code = "TRUNCATION_TOO_SMALL"

    def __init__(self, message, jumps=()):
        super().__init__(message)
        self.jumps = list(jumps)


class PoleOrderMismatch(SpliceError):
    code = "POLE_ORDER_MISMATCH"


class Infeasible(SpliceError):
    code = "INFEASIBLE"


class Degenerate(SpliceError):
    code = "DEGENERATE"


class TriangularityViolation(SpliceError):
    code = "TRIANGULARITY_VIOLATION"


class NotPositiveBraid(SpliceError, ValueError):
    code = "NOT_POSITIVE_BRAID"
