class NvaluedError(Exception):
    pass


class UsageError(NvaluedError, ValueError):
    """Bad arguments or an unmet precondition."""


class InexactDivision(NvaluedError, ArithmeticError):
    """An exact division had a nonzero remainder (internal invariant breach)."""


class WNotEliminable(NvaluedError):
    """A w-exponent that should be a multiple of n was not."""


class NotSymmetric(NvaluedError, ValueError):
    pass


class CrossCheckFailure(NvaluedError):
    """Independent constructions disagree."""


class InvariantBreach(NvaluedError):
    pass


class DegenerateLeadingCoefficient(NvaluedError):
    pass
