"""Exception hierarchy.

Errors fall in two families that the command line maps to distinct exit
codes: :class:`RefusalError` (the mathematics does not apply to the input)
and :class:`NumericalError` (the computation itself broke down).
"""


class CurvedNBodyError(Exception):
    """Base class for every error raised by this package."""


class RefusalError(CurvedNBodyError, ValueError):
    """The input lies outside the domain of the requested operation."""


class NumericalError(CurvedNBodyError, ArithmeticError):
    """A numerical procedure failed on an otherwise valid input."""


class Inadmissible(RefusalError):
    """Positions violate ordering, positivity or sit on a singular set."""


class WrongCase(RefusalError):
    """The positions belong to a regime the operation does not handle."""

    def __init__(self, message, case=None):
        super().__init__(message)
        self.case = case


class NotCollinearSymmetric(RefusalError):
    """Configuration is not an origin body plus real mirror pairs."""


class UnknownLemma(RefusalError):
    pass


class MassNonpositive(RefusalError):
    """A closed-form mass relation produced a nonpositive mass."""


class SingularPair(NumericalError):
    """Two bodies coincide or are antipodal, the potential is singular."""

    def __init__(self, i, j, message=None):
        super().__init__(message or f"bodies {i} and {j} form a singular pair")
        self.i = i
        self.j = j


class AntipodalSingularity(SingularPair):
    """The kernel T_ij of the condition system vanishes for bodies i, j."""


class SingularSystem(NumericalError):
    """Linear system for the masses is singular or too ill conditioned."""


class SignAssertionFailed(NumericalError):
    """A tabulated coefficient sign does not hold at the given positions."""

    def __init__(self, message, failures=None):
        super().__init__(message)
        self.failures = failures or {}


class SingularityReached(NumericalError):
    def __init__(self, t, i, j):
        super().__init__(f"bodies {i} and {j} became singular at t={t:.17g}")
        self.t = t
        self.i = i
        self.j = j


class StepSizeUnderflow(NumericalError):
    pass


class NegativeOmegaSquared(NumericalError):
    """Force balance demands a nonpositive squared angular velocity."""
