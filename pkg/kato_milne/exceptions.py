"""
Custom exceptions for kato-milne
"""


class KatoMilneError(Exception):
    """Custom exception for kato-milne errors"""
    pass


class ConfigurationError(KatoMilneError):
    """Invalid configuration file or setting"""
    pass


class DivisionByZero(KatoMilneError, ZeroDivisionError):
    """Inversion of zero in a field or division by the zero polynomial"""
    pass


class NotMonic(KatoMilneError):
    """A place was requested for a polynomial that is not monic"""
    pass


class ZeroPolynomial(KatoMilneError):
    """A place was requested for the zero polynomial or a constant"""
    pass


class DegreeTooLarge(KatoMilneError):
    """A polynomial must be reduced modulo the place first"""
    pass


class FieldMismatch(KatoMilneError):
    """Operands live over different fields"""
    pass


class ZeroArgument(KatoMilneError):
    """dlog of zero"""
    pass


class ZeroDlogArgument(ZeroArgument):
    """dlog(0) found while parsing a class"""
    pass


class PlaceNotClassified(KatoMilneError):
    """The operation needs a classified finite place"""
    pass


class UnsupportedDegree(KatoMilneError):
    """Negative form degree"""
    pass


class ConstraintViolation(KatoMilneError):
    """Generator parameters violate a clause of their definition"""
    pass


class KindPlaceMismatch(KatoMilneError):
    """Closed-form kind not applicable at this place"""
    pass


class DegreeZero(KatoMilneError):
    """Transfers of degree-zero forms are not defined"""
    pass


class SingularTransfer(KatoMilneError):
    """The transferred quadratic space is singular"""
    pass


class NonLogarithmicTerm(KatoMilneError):
    """A term cannot be mapped through the Kato correspondence"""
    pass


class ExpressionSyntaxError(KatoMilneError):
    """Syntax error in element, place or class text"""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
