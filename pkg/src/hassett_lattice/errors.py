"""Exception types raised across the package."""


class LatticeError(Exception):
    """Base class for every error raised by hassett_lattice."""


class NonSquare(LatticeError):
    pass


class NotSymmetric(LatticeError):
    pass


class NotPositiveDefinite(LatticeError):
    pass


class DimensionMismatch(LatticeError):
    pass


class RankDeficient(LatticeError):
    pass


class InvalidDiscriminant(LatticeError):
    """A discriminant fails d >= 8, d = 0,2 mod 6."""


class NonSquareMultiplier(LatticeError):
    """Slots 3..20 need d/6 or (d-2)/6 to be a perfect square."""


class SlotConstraint(LatticeError):
    pass


class TupleTooLong(LatticeError):
    pass


class UnknownCase(LatticeError):
    pass


class ParameterConstraint(LatticeError):
    pass


class TupleInfeasible(LatticeError):
    pass


class RankExceeded(LatticeError):
    pass


class SchemaError(LatticeError):
    pass


class Infeasible(LatticeError):
    pass


class InvalidInclude(LatticeError):
    pass
