"""Exception types shared across the package.

Everything derives from ``QecError`` (itself a ``ValueError``) so callers can
catch the whole family at the CLI boundary.
"""


class QecError(ValueError):
    pass


# algebra / linear algebra
class ZeroQuaternion(QecError):
    pass


class DimensionMismatch(QecError):
    pass


class NotHermitian(QecError):
    pass


class NotPSD(QecError):
    pass


class TooLarge(QecError):
    pass


# designs
class TooFewColumns(QecError):
    pass


class TooFewCodewords(QecError):
    pass


class LengthMismatch(QecError):
    pass


# pauli / codes
class BadCharacter(QecError):
    pass


class EmptyString(QecError):
    pass


class ParseError(QecError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class CommutationViolation(QecError):
    def __init__(self, i: int, j: int):
        super().__init__(f"generators {i} and {j} anticommute")
        self.i = i
        self.j = j


class DependentGenerators(QecError):
    pass


class WrongCount(QecError):
    pass


class LogicalViolation(QecError):
    pass


# decoding
class BudgetExceeded(QecError):
    pass


class UnknownSyndrome(QecError):
    pass


class NoCorrectionFound(QecError):
    def __init__(self, max_weight: int):
        super().__init__(f"no correction of weight <= {max_weight}")
        self.max_weight = max_weight


class SyndromeMismatch(QecError):
    pass


class MissingLogicals(QecError):
    pass


class ZeroProjection(QecError):
    pass


# channels / metrics / pipelines
class WeightTooLarge(QecError):
    pass


class DomainError(QecError):
    pass


class DegenerateFit(QecError):
    pass


class QubitOutOfRange(QecError):
    pass


class ZeroOperator(QecError):
    pass


class SingularCodec(QecError):
    pass


class CodeMismatch(QecError):
    pass


class ValidationFailed(QecError):
    pass
