"""Exception hierarchy shared by all modules."""


class KasamiError(Exception):
    """Base class for every error raised by this package."""


class FieldError(KasamiError):
    pass


class NotPrimitive(FieldError):
    pass


class NotIrreducible(FieldError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class NotInSubfield(FieldError):
    pass


class OrderUnavailable(FieldError):
    pass


class NoFactorization(FieldError):
    pass


class CodeError(KasamiError):
    pass


class RankDeficient(CodeError):
    pass


class TooLarge(CodeError):
    pass


class NonIntegerResult(CodeError):
    pass


class NotDivisor(CodeError):
    pass


class DegenerateOrbit(CodeError):
    pass


class NotCyclic(CodeError):
    pass


class AlphabetMismatch(CodeError):
    pass


class CoprimalityViolated(CodeError):
    pass


class IndexCollision(CodeError):
    pass


class FormatError(CodeError):
    pass


class GraphError(KasamiError):
    pass


class ZeroColumn(GraphError):
    pass


class Disconnected(GraphError):
    pass


class ShapeMismatch(GraphError):
    pass


class WrongArray(GraphError):
    pass


class KOutOfRange(GraphError):
    pass


class AutError(KasamiError):
    pass


class BasisDegenerate(AutError):
    pass


class NotPLinear(AutError):
    pass
