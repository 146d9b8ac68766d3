class EdrankError(Exception):
    pass


class InvalidFamilyParams(EdrankError, ValueError):
    pass


class InvalidFamily(EdrankError, ValueError):
    pass


class NotARoot(EdrankError, ValueError):
    pass


class GeneratorOutsideLattice(EdrankError, ValueError):
    pass


class VectorOutsideLattice(EdrankError, ValueError):
    pass


class GradingNotPreserved(EdrankError):
    pass


class IdentityCheckFailed(EdrankError):
    pass


class EmptySubset(EdrankError, ValueError):
    pass


class BudgetExceeded(EdrankError):
    pass


class UnsupportedPair(EdrankError, ValueError):
    pass


class PipelineConditionFailed(EdrankError):
    pass
