"""Exception hierarchy for flexlab.

Every error raised on purpose by this package derives from FlexlabError, so
callers can catch one type at the boundary.  The more specific classes exist
because several of them are part of behavioural contracts: e.g. arithmetic on
elements of different fields must raise MixedFields rather than silently
coercing, and any internal cross-check that fails must surface as
InternalContractViolation instead of producing a wrong answer.
"""


class FlexlabError(Exception):
    """Base class for all deliberate flexlab errors."""


class DivisionByZero(FlexlabError, ZeroDivisionError):
    """Division or inversion of a zero element."""


class MixedFields(FlexlabError, TypeError):
    """Binary operation on elements of two different fields."""


class CapExceeded(FlexlabError):
    """A requested construction or enumeration exceeds the configured size caps."""


class SingularMatrix(FlexlabError):
    """Matrix inversion / solving was asked of a singular matrix."""


class DegreeMismatch(FlexlabError, ValueError):
    """Input polynomial or form has the wrong degree for this operation."""


class ZeroForm(FlexlabError, ValueError):
    """The zero form was passed where a nonzero form is required."""


class NotSmooth(FlexlabError):
    """A smooth cubic was required but the given one is singular."""


class SingularCurve(NotSmooth):
    """A Weierstrass equation with vanishing discriminant."""


class PointNotOnCurve(FlexlabError, ValueError):
    """The given projective point does not lie on the curve."""


class PointNotOnLine(FlexlabError, ValueError):
    """The given projective point does not lie on the line."""


class OriginNotFlex(FlexlabError, ValueError):
    """Chord-tangent group law requested with a base point that is not a flex."""


class RequiresCharNot3(FlexlabError):
    """Operation is only defined away from characteristic 3."""


class NotInAmbient(FlexlabError, ValueError):
    """A supplied element does not belong to the ambient structure it was
    claimed to live in (wrong field, wrong modulus, non-unit determinant)."""


class BadFactorization(FlexlabError):
    """A factorization does not satisfy the preconditions of the construction
    that consumes it (e.g. factors that must be pairwise coprime odd integers
    at least 3), or an internal factorization cross-check failed."""


class BudgetExceeded(FlexlabError):
    """A bounded search ran out of its configured budget before finishing."""


class ConfigError(FlexlabError, ValueError):
    """Malformed user-supplied configuration or CLI input."""


class InconclusiveBeyondHeight(FlexlabError):
    """A height-bounded global search neither found a witness nor certified
    emptiness; the answer may lie beyond the configured height."""


class GoldenMismatch(FlexlabError):
    """A recomputed quantity disagrees with its recorded expected value."""


class LemmaViolated(FlexlabError):
    """A verification routine found a claimed statement to be false."""


class InternalContractViolation(FlexlabError, AssertionError):
    """Two independent routes inside the package disagree, or a structural
    invariant that should hold by construction failed to hold."""


class Unreachable(InternalContractViolation):
    """A case that a proof says cannot occur occurred."""
