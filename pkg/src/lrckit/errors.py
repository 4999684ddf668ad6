"""Exception hierarchy shared by every lrckit module."""


class LrckitError(Exception):
    """Base class for all toolkit errors."""


class FieldMismatch(LrckitError):
    """Operands belong to prime fields with different moduli."""


class DivisionByZero(LrckitError, ZeroDivisionError):
    """Division or inversion of the zero element."""


class DimensionMismatch(LrckitError, ValueError):
    """Vector/point/message length does not match the expected dimension."""


class NoSolution(LrckitError):
    """Linear system is inconsistent."""


class Singular(LrckitError):
    """Matrix inversion requested for a rank-deficient square matrix."""


class ZeroVector(LrckitError, ValueError):
    """A nonzero vector was required."""


class DegreeTooHigh(LrckitError, ValueError):
    """Polynomial degree exceeds the bound of the target code."""


class NotCollinear(LrckitError, ValueError):
    """Points were required to lie on a single affine line."""


class WrongPointCount(LrckitError, ValueError):
    """Wrong number of points supplied for a construction."""


class TooLarge(LrckitError):
    """Requested enumeration exceeds the brute-force guard."""


class TooManyPoints(LrckitError, ValueError):
    """More evaluation points requested than the field provides."""


class DuplicatePoints(LrckitError, ValueError):
    """Evaluation points must be distinct."""


class RankDeficient(LrckitError, ValueError):
    """Generator rows do not have full rank."""


class InfeasibleParameters(LrckitError, ValueError):
    """Parameter combination provably admits no solution."""


class DecodingFailure(LrckitError):
    """No codeword within the decoding radius, or the result is ambiguous."""


class LTooLarge(LrckitError, ValueError):
    """Line-extension length L outside the valid range for the field."""


class UncoveredIndex(LrckitError, ValueError):
    """A symbol has no repair line; pass allow_uncovered to permit this."""


class DegenerateDirection(LrckitError, ValueError):
    """A pair (i, i) or two equal points would give a zero line direction."""


class QTooSmall(LrckitError, ValueError):
    """Field too small for the requested construction."""


class NoRepairGroup(LrckitError):
    """No line through the failed node retains enough survivors."""


class PartialFailure(LrckitError):
    """Cooperative repair recovered some nodes but not all.

    Carries the partial results so callers can continue with a
    different strategy.
    """

    def __init__(self, recovered, unrecoverable, events):
        self.recovered = dict(recovered)
        self.unrecoverable = tuple(sorted(unrecoverable))
        self.events = list(events)
        super().__init__(f"unrecoverable nodes: {self.unrecoverable}")


class NotSystematicInner(LrckitError, ValueError):
    """Inner code lacks the identity prefix needed for a systematic layout."""


class NoSpanningDirections(LrckitError):
    """Row differences do not span the ambient space; derivative decoding
    cannot determine the quadratic part."""


class InconsistentGradient(LrckitError, ValueError):
    """Supplied partial derivatives are not the gradient of any polynomial."""


class CharacteristicDividesDegree(LrckitError, ValueError):
    """Euler recovery needs the degree to be invertible in the field."""


class DuplicateAbscissa(LrckitError, ValueError):
    """Interpolation samples repeat a t value."""


class InconsistentSamples(LrckitError, ValueError):
    """Surplus interpolation samples disagree with the fitted polynomial."""


class ZeroDirection(LrckitError, ValueError):
    """Line direction must be nonzero."""


class LengthMismatch(LrckitError, ValueError):
    """Codeword length does not match the node count."""


class TooManyFailures(LrckitError, ValueError):
    """Failure count exceeds the cluster size."""


class Unrecoverable(LrckitError):
    """Even global decoding cannot restore the listed nodes."""

    def __init__(self, nodes):
        self.nodes = tuple(sorted(nodes))
        super().__init__(f"lost nodes: {self.nodes}")


class AffineRankDeficient(LrckitError):
    """Appending the all-ones column does not raise the generator rank, so
    affine constants cannot be separated during decoding."""


class SpecFileError(LrckitError, ValueError):
    """Code spec file is malformed or inconsistent with its parameters."""
