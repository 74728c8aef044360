"""Exception hierarchy shared by every module of the package."""


class CoheytError(ValueError):
    """Base class; CLI maps every subclass to exit code 2."""


class DuplicateName(CoheytError):
    pass


class UnknownName(CoheytError):
    pass


class CycleDetected(CoheytError):
    pass


class IndexOutOfRange(CoheytError):
    pass


class NotADownset(CoheytError):
    pass


class ParentMismatch(CoheytError):
    pass


class UnboundVariable(CoheytError):
    pass


class ParseError(CoheytError):
    pass


class CapExceeded(CoheytError):
    pass


class NotALattice(CoheytError):
    pass


class NotDistributive(CoheytError):
    pass


class NotBounded(CoheytError):
    pass


class NotIncreasing(CoheytError):
    pass


class NotSurjective(CoheytError):
    pass


class LiftingFails(CoheytError):
    def __init__(self, zeta, x):
        super().__init__(f"lifting fails for zeta={zeta!r}, x={x!r}")
        self.zeta = zeta
        self.x = x


class NotInCarrier(CoheytError):
    pass


class InvalidSignature(CoheytError):
    pass


class NotProper(CoheytError):
    pass


class HypothesisViolated(CoheytError):
    pass


class VarietyMismatch(CoheytError):
    pass


class FactorMismatch(CoheytError):
    pass
