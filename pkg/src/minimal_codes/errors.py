"""Exception types raised across the package."""


class MinimalCodesError(Exception):
    """Base class for all errors raised by this package."""


class DimensionTooLarge(MinimalCodesError):
    pass


class RankDeficient(MinimalCodesError):
    pass


class DegenerateColumn(MinimalCodesError):
    pass


class UnsupportedField(MinimalCodesError, ValueError):
    pass


class MatrixFormatError(MinimalCodesError, ValueError):
    pass


class AuditMismatch(MinimalCodesError):
    """Two independent checks that must agree returned different verdicts."""


class DomainError(MinimalCodesError, ValueError):
    pass


class NotPrimePower(MinimalCodesError, ValueError):
    pass


class NoCrossing(MinimalCodesError):
    """A bracketing interval does not contain a sign change."""


class BlockMismatch(MinimalCodesError, ValueError):
    pass


class IncompleteFamily(MinimalCodesError, ValueError):
    pass


class Unsupported(MinimalCodesError, ValueError):
    pass


class VerificationFailed(MinimalCodesError):
    def __init__(self, check: str, detail: str = ""):
        self.check = check
        self.detail = detail
        super().__init__(f"{check}: {detail}" if detail else check)
