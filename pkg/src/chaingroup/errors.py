"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line front end.
"""


class ChainGroupError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class ParseError(ChainGroupError, ValueError):
    exit_code = 2


class InputError(ChainGroupError, ValueError):
    """Input is well formed but violates an operation's precondition."""

    exit_code = 6


class NotAGroup(InputError):
    pass


class NotCentral(InputError):
    pass


class UnknownIrrep(InputError):
    pass


class FamilyMismatch(InputError):
    pass


class NotUnitary(InputError):
    pass


class NonAbelianGroup(InputError):
    pass


class NotInvariant(InputError):
    pass


class NotAHomomorphism(InputError):
    pass


class NumericalResidual(ChainGroupError, ArithmeticError):
    exit_code = 3


class DegenerateSpectrum(NumericalResidual):
    pass


class TheoremViolation(ChainGroupError, AssertionError):
    """A result that must hold mathematically failed; always a bug."""

    exit_code = 4


class WellDefinednessViolation(TheoremViolation):
    pass


class WindowTooSmall(TheoremViolation):
    pass


class ClosureCapExceeded(ChainGroupError, OverflowError):
    exit_code = 5
