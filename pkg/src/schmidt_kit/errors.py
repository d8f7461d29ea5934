"""Exception hierarchy shared by every module in the package."""


class SchmidtKitError(Exception):
    """Base class for all errors raised by schmidt_kit."""


# exact
class NonSquare(SchmidtKitError, ValueError):
    pass


class BadIndexSet(SchmidtKitError, ValueError):
    pass


# states
class ZeroState(SchmidtKitError, ValueError):
    pass


# subspace
class DimensionTooSmall(SchmidtKitError, ValueError):
    pass


class OutOfRange(SchmidtKitError, ValueError):
    pass


class LengthMismatch(SchmidtKitError, ValueError):
    pass


class CertificationFailed(SchmidtKitError):
    """A certificate item that must hold did not; points at an implementation bug."""


# mixed
class NotAState(SchmidtKitError, ValueError):
    pass


class DimensionMismatch(SchmidtKitError, ValueError):
    pass


class NotSupported(SchmidtKitError):
    """The state's range is not contained in the subspace, so no bound is issued."""


class InvalidCertificate(SchmidtKitError):
    pass


# oracle
class BudgetExceeded(SchmidtKitError):
    def __init__(self, required, budget):
        super().__init__(
            f"exhaustive sweep needs {required} rank evaluations, budget is {budget}; "
            "use random mode instead"
        )
        self.required = required
        self.budget = budget


class AllZeroCoefficients(SchmidtKitError, ValueError):
    pass


class DegenerateGrid(SchmidtKitError, ValueError):
    pass
