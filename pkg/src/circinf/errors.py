"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end:
2 for malformed input, 3 for violated preconditions, 4 for computations
that ran but returned a negative verdict.
"""


class CircInfError(Exception):
    exit_code = 1


class ParseError(CircInfError):
    exit_code = 2

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(CircInfError):
    exit_code = 3


class Disconnected(PreconditionError):
    pass


class InvalidPoint(PreconditionError):
    pass


class NotContractible(PreconditionError):
    pass


class NotACycle(PreconditionError):
    pass


class InvalidWeight(PreconditionError):
    pass


class SingularMatrix(PreconditionError):
    pass


class StartsAtRepeller(PreconditionError):
    pass


class InvalidWord(PreconditionError):
    pass


class ComputationError(CircInfError):
    exit_code = 4


class DegenerateForm(ComputationError):
    pass


class NoRecurrence(ComputationError):
    pass


class NotQuadratic(ComputationError):
    pass


class NotLoxodromic(ComputationError):
    pass


class DegreeOverflow(ComputationError):
    def __init__(self, message, partial=()):
        super().__init__(message)
        self.partial = list(partial)
