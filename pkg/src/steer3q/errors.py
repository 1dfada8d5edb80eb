"""Exception types raised across the package.

Every failure mode carries a message naming the violated condition and,
where meaningful, its magnitude, so CLI diagnostics can be produced
directly from the exception text.
"""


class Steer3qError(Exception):
    """Base class for all package errors."""


# ---- matrix / state validation ----------------------------------------

class BadDimension(Steer3qError):
    pass


class NotHermitian(Steer3qError):
    pass


class TraceNotOne(Steer3qError):
    pass


class NotPositiveSemidefinite(Steer3qError):
    pass


class NotPSD(Steer3qError):
    """Input to a PSD-only operation (e.g. matrix square root) is not PSD."""


class NotNormalized(Steer3qError):
    pass


class BadSubsystemSet(Steer3qError):
    pass


class NoConvergence(Steer3qError):
    """Iterative eigensolver exceeded its sweep cap."""


# ---- steering ----------------------------------------------------------

class BadSettings(Steer3qError):
    """Measurement directions fail the unit/orthonormality requirements."""


# ---- relations ---------------------------------------------------------

class MixedStateWithoutTau(Steer3qError):
    """Tangle-based check invoked on a mixed state with no closed-form tangle."""


# ---- families ----------------------------------------------------------

class UnknownName(Steer3qError):
    pass


class ParamOutOfRange(Steer3qError):
    pass


class NotNormalizedParams(Steer3qError):
    pass


class BadParams(Steer3qError):
    pass


class BadRank(Steer3qError):
    pass


class NoNonMonogamyAtUnitVisibility(Steer3qError):
    """Robustness analysis requires two steerable pairs at v = 1."""


# ---- CLI / IO ----------------------------------------------------------

class ParseError(Steer3qError):
    pass


class ValidationError(Steer3qError):
    pass


class MixedStateInput(Steer3qError):
    pass


class UnknownSuite(Steer3qError):
    pass


class UnknownFamily(Steer3qError):
    pass


class BadRange(Steer3qError):
    pass
