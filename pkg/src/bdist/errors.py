"""Exception hierarchy for bdist."""


class BdistError(Exception):
    """Base class for every error raised by the package."""


class DomainError(BdistError):
    """An operation was applied outside its mathematical domain."""


class ZeroPeriod(DomainError):
    pass


class EmptyInterval(DomainError):
    pass


class Unrepresentable(DomainError):
    pass


class UnboundedSupport(DomainError):
    pass


class NotIntegrable(DomainError):
    pass


class LimitNotStabilized(DomainError):
    pass


class NoVanishingFamily(DomainError):
    pass


class ConvolutionUndefined(DomainError):
    pass


class ClosureFailure(DomainError):
    def __init__(self, message, product=None):
        super().__init__(message)
        self.product = product


class UnknownSuite(BdistError):
    pass


class DslSyntaxError(BdistError):
    """Parse failure carrying the offending character offset."""

    def __init__(self, message, pos=None, text=None):
        self.pos = pos
        self.text = text
        if pos is not None:
            message = f"{message} at offset {pos}"
            if text is not None:
                message += f"\n  {text}\n  {' ' * pos}^"
        super().__init__(message)


class DslTypeError(BdistError):
    """Expression parsed but combines values of incompatible kinds."""


class VersionMismatch(BdistError):
    pass
