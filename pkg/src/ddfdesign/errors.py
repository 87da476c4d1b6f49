"""Exception hierarchy shared by every module of the package."""


class DDFError(Exception):
    """Base class for all package errors."""


class ParameterError(DDFError, ValueError):
    """Invalid construction or query parameters."""


class NotPrime(ParameterError):
    pass


class SizeExceeded(ParameterError):
    pass


class DoesNotDivide(ParameterError):
    pass


class DegenerateParameters(ParameterError):
    pass


class IndexOutOfRange(ParameterError):
    pass


class ConditionsNotMet(ParameterError):
    pass


class OddDegree(ParameterError):
    pass


class DlogOfZero(DDFError, ValueError):
    pass


class NotAUnit(DDFError, ValueError):
    pass


class NotDisjoint(DDFError, ValueError):
    pass


class UnequalBlockSizes(DDFError, ValueError):
    pass


class NotASubgroup(DDFError, ValueError):
    pass


class NotAPermutation(DDFError, ValueError):
    pass


class BudgetExceeded(DDFError, RuntimeError):
    pass


class CertificationFailure(DDFError):
    """A certification query found an element (or pair) breaking the property.

    ``witness`` is the minimal-index offending element, ``multiplicity`` its
    observed count and ``reason`` a short machine-readable tag.
    """

    def __init__(self, witness, multiplicity=None, reason="not-constant"):
        self.witness = witness
        self.multiplicity = multiplicity
        self.reason = reason
        super().__init__(f"{reason}: witness={witness!r} multiplicity={multiplicity!r}")


class NotConstant(CertificationFailure):
    pass
