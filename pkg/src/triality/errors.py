"""Exception hierarchy.

``InputError`` subclasses signal malformed or inconsistent input (CLI exit
code 1); ``MathError`` subclasses signal a violated mathematical
precondition (CLI exit code 2).
"""


class TrialityError(Exception):
    exit_code = 1


class InputError(TrialityError, ValueError):
    exit_code = 1


class MathError(TrialityError, ArithmeticError):
    exit_code = 2


class DimensionMismatch(InputError):
    pass


class InvalidAlgebra(InputError):
    pass


class InvalidBimodule(InputError):
    pass


class ParseError(InputError):
    pass


class UnknownPreset(InputError):
    pass


class NoSolution(MathError):
    pass


class Singular(MathError):
    pass


class NotInvertible(MathError):
    pass


class ComponentNotInvertible(MathError):
    pass


class NotADerivation(MathError):
    pass


class NotATernaryDerivation(MathError):
    pass


class NotATernaryAutomorphism(MathError):
    pass


class GeneralizedLeibnizViolated(MathError):
    pass


class TdConditionsViolated(MathError):
    def __init__(self, conditions, message=None):
        self.conditions = tuple(conditions)
        if message is None:
            message = "block-form conditions violated: " + ", ".join(self.conditions)
        super().__init__(message)


class TdFormMismatch(MathError):
    """The triple does not have the block shape (td) on the Peirce pieces."""


class NotFaithful(MathError):
    pass


class NotAnAutomorphism(MathError):
    pass


class InputNotAutomorphism(MathError):
    pass


class NotMPreserving(MathError):
    pass


class NotInPullback(MathError):
    pass
