from typing import Any, Dict, Optional


class TurboLerchError(Exception):
    """Base class for every error raised by turbo-lerch."""


class DomainError(TurboLerchError, ValueError):
    """An argument lies outside the domain of the function."""


class PoleError(TurboLerchError):
    """The function has a pole at the requested argument."""

    def __init__(self, message: str, location: Any = None):

        super().__init__(message)
        self.location = location


class NonFiniteError(TurboLerchError, ArithmeticError):
    """A NaN or infinity showed up where a finite value was required."""


class DivergenceError(TurboLerchError):
    """The defining series diverges and no continuation is available."""


class UnsupportedRegimeError(TurboLerchError):
    """The arguments fall outside every implemented evaluation regime."""


class NonConvergenceError(TurboLerchError):
    """
    An iterative procedure ran out of budget.
    `partial` holds the best value reached, `diagnostics` a free-form dict.
    """

    def __init__(
        self,
        message: str,
        partial: Any = None,
        diagnostics: Optional[Dict[str, Any]] = None,
    ):

        super().__init__(message)
        self.partial = partial
        self.diagnostics = diagnostics or {}


class IntegrandError(TurboLerchError):
    """The integrand returned NaN or infinity at an interior abscissa."""

    def __init__(self, message: str, abscissa: float):

        super().__init__(message)
        self.abscissa = abscissa


class PoleOrderError(TurboLerchError):
    """Principal values are only defined here for poles of order 1 and 2."""


class RangeError(TurboLerchError, ValueError):
    """Combinatorial index out of the supported range."""


class TermError(TurboLerchError):
    """Wraps an error raised while evaluating one term of a finite sum."""

    def __init__(self, message: str, index: Any, cause: Exception):

        super().__init__(f"{message} (term {index}): {cause}")
        self.index = index
        self.cause = cause


class CatalogError(TurboLerchError):
    """Malformed catalog file or entry."""

    def __init__(self, message: str, line: Optional[int] = None, field: str = ""):

        where = []
        if line is not None:
            where.append(f"line {line}")
        if field:
            where.append(f"field '{field}'")
        suffix = f" [{', '.join(where)}]" if where else ""
        super().__init__(message + suffix)
        self.line = line
        self.field = field


class UnknownFamilyError(CatalogError):
    def __init__(self, family: str):

        super().__init__(f"unknown family '{family}'", field="family")
        self.family = family


class ValidityError(CatalogError):
    """A parameter set violates one of the entry's validity conditions."""

    def __init__(self, condition: str, detail: str = ""):

        message = f"validity condition violated: {condition}"
        if detail:
            message += f" ({detail})"
        super().__init__(message, field="params")
        self.condition = condition
