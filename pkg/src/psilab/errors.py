"""Exception hierarchy shared across the package."""


class PsiLabError(Exception):
    pass


class DomainError(PsiLabError, ValueError):
    """An argument lies outside the domain of the operation."""


class ContractViolation(PsiLabError, ValueError):
    """A precondition on a coloring, witness or profile does not hold."""


class UnsupportedSize(PsiLabError, ValueError):
    pass


class GraphFormatError(PsiLabError, ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"graph6 parse error at byte {offset}: {message}")
        self.offset = offset


class Inconclusive(PsiLabError):
    """The node budget ran out before the search could decide.

    ``lower`` and ``upper`` are the best bounds known when the search stopped.
    """

    def __init__(self, message: str, lower: int | None = None, upper: int | None = None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class SolverDisagreement(PsiLabError, AssertionError):
    """Two independent routes to the same verdict disagreed."""
