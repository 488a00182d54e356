"""Exception hierarchy shared by every module."""


class BouquetError(Exception):
    pass


class DomainError(BouquetError, ValueError):
    pass


class PreconditionError(BouquetError, ValueError):
    pass


class NotInDomainError(BouquetError, ValueError):
    """A point lies outside every tract (or in an ambiguous boundary ring)."""


class InadmissibleAddressError(BouquetError):
    def __init__(self, depth, message=""):
        self.depth = depth
        super().__init__(message or "pullback left the numeric domain at depth %d" % depth)


class AccuracyError(BouquetError):
    def __init__(self, achieved, target, what="map"):
        self.achieved = achieved
        self.target = target
        super().__init__("%s accuracy %.3g not within target %.3g" % (what, achieved, target))


class GeodesicError(BouquetError):
    pass


class NormalizationError(BouquetError, ValueError):
    pass


class SpecError(BouquetError, ValueError):
    pass


class DisjointTypeError(BouquetError):
    pass


class AddressParseError(BouquetError, ValueError):
    def __init__(self, position, message):
        self.position = position
        super().__init__("%s (at column %d)" % (message, position))


class PrecisionError(BouquetError):
    """The requested evaluation cannot be resolved at the working precision."""


class HypothesisError(BouquetError, ValueError):
    pass
