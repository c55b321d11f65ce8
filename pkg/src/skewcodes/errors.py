"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line front end, so
each exit status maps to exactly one family of failures.
"""


class SkewCodesError(Exception):
    exit_code = 1


class ParseError(SkewCodesError):
    """Malformed configuration document or element expression."""

    exit_code = 2

    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        if where:
            message = f"{', '.join(where)}: {message}"
        super().__init__(message)


class HypothesisError(SkewCodesError):
    """An input lies outside the hypotheses under which a result is stated."""

    exit_code = 3


class NotCentral(HypothesisError):
    pass


class OutOfHypothesis(HypothesisError):
    pass


class HypothesisViolated(HypothesisError):
    pass


class IdentityAutomorphism(HypothesisError):
    pass


class InconsistencyError(SkewCodesError):
    """Two independent computations of the same quantity disagree."""

    exit_code = 4


class AlgebraError(SkewCodesError):
    exit_code = 5


class NotAChainRing(AlgebraError):
    pass


class NotBasicIrreducible(AlgebraError):
    pass


class NotAnAutomorphism(AlgebraError):
    pass


class RingMismatch(AlgebraError):
    pass


class NotAUnit(AlgebraError):
    pass


class NonUnitLeadingCoefficient(AlgebraError):
    pass


class NotMonic(AlgebraError):
    pass


class ModulusMismatch(AlgebraError):
    pass


class LengthMismatch(AlgebraError):
    pass


class DegreeMismatch(AlgebraError):
    pass


class BudgetError(SkewCodesError):
    exit_code = 6


class SizeBoundExceeded(BudgetError):
    pass


class BudgetExceeded(BudgetError):
    pass
