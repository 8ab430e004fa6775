"""Exception types shared across the package."""


class EllstatError(ValueError):
    pass


class NonPositive(EllstatError):
    pass


class NotPrime(EllstatError):
    pass


class ExponentZero(EllstatError):
    pass


class CeilingExceeded(EllstatError):
    pass


class FieldDivisionByZero(EllstatError, ZeroDivisionError):
    pass


class SingularModel(EllstatError):
    pass


class BadDiscriminant(EllstatError):
    pass


class NotWellDefined(EllstatError):
    pass


class NonUnit(EllstatError):
    pass


class ArgumentNotNegative(EllstatError):
    pass


class ModulusTooLarge(EllstatError):
    pass


class ToleranceExceeded(EllstatError):
    pass


class HypothesisViolated(EllstatError):
    pass


class IncompatibleResidues(EllstatError):
    pass


class NegativeOrNonIntegerDimension(EllstatError):
    pass
