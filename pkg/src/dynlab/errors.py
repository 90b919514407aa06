"""Exception hierarchy shared by every dynlab module."""


class DynlabError(Exception):
    """Base class for all library errors."""


class SplitRequired(DynlabError):
    """An extension modulus turned out to be reducible.

    Raised when an inversion or a zero test in ``Q[theta]/(m)`` meets a zero
    divisor.  ``factors`` is a nontrivial factorisation ``m = m1 * m2`` found
    along the way; callers rerun the computation in each child context.
    """

    def __init__(self, context, m1, m2):
        self.context = context
        self.factors = (m1, m2)
        super().__init__(
            f"modulus of {context.name} splits as ({m1.render(context.name)})"
            f" * ({m2.render(context.name)})"
        )

    def children(self):
        return self.context.split(*self.factors)


class ZeroInversion(DynlabError, ZeroDivisionError):
    pass


class DegreeMismatch(DynlabError, ValueError):
    pass


class MapSyntaxError(DynlabError, SyntaxError):
    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} at position {position}")


class ZeroDenominator(DynlabError, ValueError):
    pass


class DegreeZero(DynlabError, ValueError):
    pass


class NotFixed(DynlabError, ValueError):
    pass


class UnsupportedPeriod(DynlabError, ValueError):
    pass


class UnrepresentableRoot(DynlabError):
    pass


class TowerBudgetExceeded(DynlabError):
    pass


class ParamViolation(DynlabError, ValueError):
    pass


class FactorBudgetExceeded(DynlabError):
    def __init__(self, message, cofactor, partial=None):
        self.cofactor = cofactor
        self.partial = partial
        super().__init__(message)


class DigitCapExceeded(DynlabError):
    pass


class InternalInconsistency(DynlabError, AssertionError):
    """Two independent routes disagreed; this is a bug, never user error."""
