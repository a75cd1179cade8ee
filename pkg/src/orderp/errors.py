"""Exception hierarchy shared by all modules."""


class OrderPError(Exception):
    """Base class for every error raised by the library."""


class UnknownVariable(OrderPError):
    pass


class PresentationError(OrderPError):
    """A ring presentation is malformed."""


class NonTerminatingPresentation(PresentationError):
    pass


class NonConfluentPresentation(PresentationError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class CoefficientError(OrderPError):
    """A coefficient cannot be represented in the target domain."""


class Undecidable(OrderPError):
    """Unit testing (or a similar question) is not implemented for this presentation."""


class NotInvertible(OrderPError):
    pass


class ZeroValuation(OrderPError):
    """The valuation of zero was requested."""


class InvariantViolation(OrderPError):
    def __init__(self, message, identity=None):
        super().__init__(message)
        self.identity = identity


class UnsupportedRing(OrderPError):
    pass


class PrecisionExhausted(OrderPError):
    pass


class PrecisionError(OrderPError):
    """Two p-adic values of incompatible precision or prime were combined."""


class NotACogenerator(OrderPError):
    pass


class NonUnitW(OrderPError):
    pass


class InvalidValuations(OrderPError):
    pass


class RelationViolation(OrderPError):
    pass
