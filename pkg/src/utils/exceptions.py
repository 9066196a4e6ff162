"""
Custom exceptions for the Weil zeta toolkit.

Every error carries an error code and, through its family, the exit code the
command-line front end uses: 2 for bad input, 3 for size-guard refusals,
4 for mathematical inconsistencies and 5 for failed hypotheses.
"""

from typing import Any, Dict, Optional, Sequence


class ZetaToolError(Exception):
    """Base exception for all toolkit errors."""

    exit_code: int = 1

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        self.message = message
        self.error_code = error_code
        self.details = details or {}
        super().__init__(self.message)

    def __str__(self) -> str:
        if self.error_code:
            return f"[{self.error_code}] {self.message}"
        return self.message


class InputError(ZetaToolError):
    """Malformed or invalid user input."""

    exit_code = 2


class SizeGuardError(ZetaToolError):
    """A computation was refused because its search space is too large."""

    exit_code = 3


class InconsistencyError(ZetaToolError):
    """The data is mathematically inconsistent with what was declared."""

    exit_code = 4


class HypothesisError(ZetaToolError):
    """The input violates a precondition of a lifting or subgroup construction."""

    exit_code = 5


# --- input -----------------------------------------------------------------

class ParseError(InputError):
    """Exception raised when an input document or expression cannot be parsed."""

    def __init__(
        self,
        message: str,
        line: int = 1,
        column: int = 1,
        expected: Sequence[str] = (),
        **kwargs
    ):
        self.line = line
        self.column = column
        self.expected = sorted(set(expected))
        where = f"line {line}, column {column}"
        if self.expected:
            message = f"{message} at {where}; expected one of: {', '.join(self.expected)}"
        else:
            message = f"{message} at {where}"
        super().__init__(message, error_code="PARSE_ERROR", **kwargs)


class InhomogeneousPolynomial(InputError):
    def __init__(self, message: str, degrees: Optional[Sequence[int]] = None, **kwargs):
        super().__init__(message, error_code="INHOMOGENEOUS_POLYNOMIAL", **kwargs)
        self.degrees = sorted(set(degrees or ()))


class UndeclaredVariable(InputError):
    def __init__(self, message: str, variable: Optional[str] = None, **kwargs):
        super().__init__(message, error_code="UNDECLARED_VARIABLE", **kwargs)
        self.variable = variable


class NotPrime(InputError):
    def __init__(self, message: str, value: Optional[int] = None, **kwargs):
        super().__init__(message, error_code="NOT_PRIME", **kwargs)
        self.value = value


class ConfigurationError(InputError):
    """Exception raised when configuration is invalid or missing."""

    def __init__(self, message: str, config_key: Optional[str] = None, **kwargs):
        super().__init__(message, error_code="CONFIGURATION_ERROR", **kwargs)
        self.config_key = config_key


class InvalidHomomorphism(InputError):
    """The integer matrix does not define a homomorphism between the groups."""

    def __init__(self, message: str, column: Optional[int] = None, **kwargs):
        super().__init__(message, error_code="INVALID_HOMOMORPHISM", **kwargs)
        self.column = column


# --- size guards -----------------------------------------------------------

class SizeExceeded(SizeGuardError):
    def __init__(
        self,
        message: str,
        bound: Optional[int] = None,
        requested: Optional[int] = None,
        **kwargs
    ):
        super().__init__(message, error_code="SIZE_EXCEEDED", **kwargs)
        self.bound = bound
        self.requested = requested


# --- inconsistencies -------------------------------------------------------

class DivisionByZero(InconsistencyError):
    def __init__(self, message: str = "inverse of zero", **kwargs):
        super().__init__(message, error_code="DIVISION_BY_ZERO", **kwargs)


class UnsupportedVariety(InconsistencyError):
    def __init__(self, message: str, kind: Optional[str] = None, **kwargs):
        super().__init__(message, error_code="UNSUPPORTED_VARIETY", **kwargs)
        self.kind = kind


class InsufficientCounts(InconsistencyError):
    def __init__(self, message: str, needed: int = 0, given: int = 0, **kwargs):
        super().__init__(message, error_code="INSUFFICIENT_COUNTS", **kwargs)
        self.needed = needed
        self.given = given


class NoRationalFit(InconsistencyError):
    def __init__(self, message: str, **kwargs):
        super().__init__(message, error_code="NO_RATIONAL_FIT", **kwargs)


class WeightAmbiguous(InconsistencyError):
    def __init__(self, message: str, factor: Optional[Sequence[int]] = None, **kwargs):
        super().__init__(message, error_code="WEIGHT_AMBIGUOUS", **kwargs)
        self.factor = list(factor or ())


class InternalZero(InconsistencyError):
    def __init__(self, message: str, degree: Optional[int] = None, **kwargs):
        super().__init__(message, error_code="INTERNAL_ZERO", **kwargs)
        self.degree = degree


class CrosscheckMismatch(InconsistencyError):
    def __init__(self, message: str, lhs: Any = None, rhs: Any = None, **kwargs):
        super().__init__(message, error_code="CROSSCHECK_MISMATCH", **kwargs)
        self.lhs = lhs
        self.rhs = rhs


class NotFinite(InconsistencyError):
    def __init__(self, message: str, part: Optional[str] = None, **kwargs):
        super().__init__(message, error_code="NOT_FINITE", **kwargs)
        self.part = part


class MinPolyInconsistent(InconsistencyError):
    def __init__(self, message: str, **kwargs):
        super().__init__(message, error_code="MINPOLY_INCONSISTENT", **kwargs)


# --- hypotheses ------------------------------------------------------------

class HypothesisFailed(HypothesisError):
    def __init__(self, message: str, witness: Any = None, **kwargs):
        super().__init__(message, error_code="HYPOTHESIS_FAILED", **kwargs)
        self.witness = witness


class NotIdempotentModP(HypothesisError):
    def __init__(self, message: str, **kwargs):
        super().__init__(message, error_code="NOT_IDEMPOTENT_MOD_P", **kwargs)


class NotOrthogonalModP(HypothesisError):
    def __init__(self, message: str, pair: Optional[Sequence[int]] = None, **kwargs):
        super().__init__(message, error_code="NOT_ORTHOGONAL_MOD_P", **kwargs)
        self.pair = tuple(pair or ())


class NotUnitModP(HypothesisError):
    def __init__(self, message: str, **kwargs):
        super().__init__(message, error_code="NOT_UNIT_MOD_P", **kwargs)


def as_tool_error(error: Exception, context: Optional[Dict[str, Any]] = None) -> ZetaToolError:
    """
    Convert generic exceptions to toolkit exceptions.

    Args:
        error: The original exception
        context: Additional context about the error

    Returns:
        ZetaToolError instance
    """
    if isinstance(error, ZetaToolError):
        return error

    if isinstance(error, FileNotFoundError):
        return InputError(
            message=f"file not found: {getattr(error, 'filename', None) or error}",
            error_code="FILE_ERROR",
            details=context or {}
        )
    elif isinstance(error, (ValueError, UnicodeDecodeError)):
        return InputError(
            message=str(error),
            error_code="VALIDATION_ERROR",
            details=context or {}
        )
    else:
        return ZetaToolError(
            message=str(error),
            error_code="UNKNOWN_ERROR",
            details=context or {}
        )
