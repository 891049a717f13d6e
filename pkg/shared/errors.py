"""Error hierarchy shared by all components.

Services log and re-raise; only the CLI maps these to exit codes.
"""


class TotalRealError(Exception):
    exit_code = 1


# Input errors

class InputError(TotalRealError):
    exit_code = 4


class VarSetMismatch(InputError):
    pass


class DegenerateInput(InputError):
    pass


class DegenerateChart(InputError):
    pass


class DegreeMismatch(InputError):
    pass


# Precondition violations

class PreconditionViolation(TotalRealError):
    exit_code = 5


class ZeroPolynomial(PreconditionViolation):
    pass


class NotZeroDimensional(PreconditionViolation):
    pass


class NotRadical(PreconditionViolation):
    pass


class NonSpecializable(PreconditionViolation):
    pass


class TooManyParameters(PreconditionViolation):
    pass


# Computation failures

class ComputationError(TotalRealError):
    exit_code = 6


class SeparationFailure(ComputationError):
    pass


class TimeBudgetExceeded(ComputationError):
    exit_code = 3


class InvariantViolation(ComputationError):
    pass
