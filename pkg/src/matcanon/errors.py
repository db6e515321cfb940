"""Exception types raised across the package.

Every error derives from :class:`CanonError` so the CLI can map any of them
to exit code 2 with a one-line diagnostic.
"""


class CanonError(Exception):
    pass


class ParseError(CanonError, ValueError):
    pass


class FieldMismatch(CanonError, ValueError):
    pass


class DimensionMismatch(CanonError, ValueError):
    pass


class NonSquare(CanonError, ValueError):
    """No square root exists in the field (the field is not square-closed)."""


class TowerLevelExceeded(CanonError, OverflowError):
    pass


class NotSymmetric(CanonError, ValueError):
    pass


class NotAlternating(CanonError, ValueError):
    pass


class Char2(CanonError, ValueError):
    """Operation requires characteristic != 2."""


class NotChar2(CanonError, ValueError):
    pass


class NotSubPermutation(CanonError, ValueError):
    pass


class NotPseudoPermutation(CanonError, ValueError):
    pass


class NotInvolutive(CanonError, ValueError):
    pass


class NotReduced(CanonError, ValueError):
    pass


class BadComposition(CanonError, ValueError):
    pass


class KindMismatch(CanonError, ValueError):
    pass


class CriteriaDisagree(CanonError, AssertionError):
    """Two criteria that must agree returned different answers."""


class TooLarge(CanonError, ValueError):
    pass


class BudgetExceeded(CanonError, RuntimeError):
    pass
