# Error Handling System
# Error codes, the exception hierarchy shared by every module, and exit-code mapping

from typing import Dict, Any, Optional
from datetime import datetime
from enum import Enum
from dataclasses import dataclass, field, replace

from config import EXIT_CODES
from core import log_debug


class ErrorCategory(Enum):
    """Error categories for classification"""
    VALIDATION = "validation"
    CONSTRAINT = "constraint"
    NUMERICAL = "numerical"
    SEARCH = "search"
    CAPACITY = "capacity"
    INPUT = "input"
    CHECK = "check"
    SYSTEM = "system"


class ErrorSeverity(Enum):
    """Error severity levels"""
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"
    CRITICAL = "critical"


@dataclass(frozen=True)
class ErrorDetails:
    """Detailed error information"""
    code: str
    category: ErrorCategory
    severity: ErrorSeverity
    message: str
    details: Dict[str, Any] = field(default_factory=dict)

    def with_details(self, **details: Any) -> "ErrorDetails":
        return replace(self, details={**self.details, **details})


class ErrorCodes:
    """Centralized error code definitions"""

    # Validation Errors (1000-1999)
    DIMENSION_MISMATCH = ErrorDetails(
        code="VAL_1001",
        category=ErrorCategory.VALIDATION,
        severity=ErrorSeverity.MEDIUM,
        message="Operand dimensions do not agree",
    )

    INVALID_ARGUMENT = ErrorDetails(
        code="VAL_1002",
        category=ErrorCategory.VALIDATION,
        severity=ErrorSeverity.MEDIUM,
        message="Argument outside its admissible range",
    )

    # Constraint Errors (2000-2999)
    OFF_MANIFOLD = ErrorDetails(
        code="CON_2001",
        category=ErrorCategory.CONSTRAINT,
        severity=ErrorSeverity.MEDIUM,
        message="Point violates the unit-modulus constraint",
    )

    NOT_TANGENT = ErrorDetails(
        code="CON_2002",
        category=ErrorCategory.CONSTRAINT,
        severity=ErrorSeverity.MEDIUM,
        message="Vector is not tangent at its base point",
    )

    NOT_HERMITIAN = ErrorDetails(
        code="CON_2003",
        category=ErrorCategory.CONSTRAINT,
        severity=ErrorSeverity.MEDIUM,
        message="Matrix is not Hermitian within tolerance",
    )

    # Numerical Errors (3000-3999)
    NON_FINITE = ErrorDetails(
        code="NUM_3001",
        category=ErrorCategory.NUMERICAL,
        severity=ErrorSeverity.HIGH,
        message="Non-finite value encountered",
    )

    DEGENERATE_RETRACTION = ErrorDetails(
        code="NUM_3002",
        category=ErrorCategory.NUMERICAL,
        severity=ErrorSeverity.MEDIUM,
        message="Retraction step folded a component through the origin",
    )

    EIGEN_NOT_CONVERGED = ErrorDetails(
        code="NUM_3003",
        category=ErrorCategory.NUMERICAL,
        severity=ErrorSeverity.HIGH,
        message="Eigenvalue computation did not converge",
    )

    # Search Errors (4000-4999)
    LINE_SEARCH_FAILED = ErrorDetails(
        code="SEARCH_4001",
        category=ErrorCategory.SEARCH,
        severity=ErrorSeverity.LOW,
        message="No step satisfied the sufficient-decrease condition",
    )

    # Capacity Errors (5000-5999)
    ORACLE_TOO_LARGE = ErrorDetails(
        code="CAP_5001",
        category=ErrorCategory.CAPACITY,
        severity=ErrorSeverity.LOW,
        message="Instance too large for exhaustive search",
    )

    # Input Errors (6000-6999)
    INVALID_INPUT_FILE = ErrorDetails(
        code="IN_6001",
        category=ErrorCategory.INPUT,
        severity=ErrorSeverity.MEDIUM,
        message="Input file is unreadable or malformed",
    )

    # Check Errors (7000-7999)
    CHECK_FAILED = ErrorDetails(
        code="CHK_7001",
        category=ErrorCategory.CHECK,
        severity=ErrorSeverity.HIGH,
        message="Verification residual exceeded its tolerance",
    )


class CCMError(Exception):
    """Base error; carries an ErrorDetails entry"""

    error_details: ErrorDetails = ErrorDetails(
        code="SYS_9001",
        category=ErrorCategory.SYSTEM,
        severity=ErrorSeverity.CRITICAL,
        message="Unexpected error",
    )

    def __init__(self, message: Optional[str] = None, **details: Any):
        self.error_details = self.error_details.with_details(**details)
        super().__init__(message or self.error_details.message)

    @property
    def code(self) -> str:
        return self.error_details.code

    @property
    def category(self) -> ErrorCategory:
        return self.error_details.category

    @property
    def details(self) -> Dict[str, Any]:
        return self.error_details.details


class DimensionError(CCMError):
    error_details = ErrorCodes.DIMENSION_MISMATCH


class InvalidArgumentError(CCMError):
    error_details = ErrorCodes.INVALID_ARGUMENT


class ConstraintError(CCMError):
    error_details = ErrorCodes.OFF_MANIFOLD


class TangencyError(ConstraintError):
    error_details = ErrorCodes.NOT_TANGENT


class HermitianError(ConstraintError):
    error_details = ErrorCodes.NOT_HERMITIAN


class NonFiniteError(CCMError):
    error_details = ErrorCodes.NON_FINITE


class RetractionError(CCMError):
    error_details = ErrorCodes.DEGENERATE_RETRACTION


class ConvergenceError(CCMError):
    error_details = ErrorCodes.EIGEN_NOT_CONVERGED


class LineSearchError(CCMError):
    error_details = ErrorCodes.LINE_SEARCH_FAILED


class OracleRefusalError(CCMError):
    error_details = ErrorCodes.ORACLE_TOO_LARGE


class InputFileError(CCMError):
    error_details = ErrorCodes.INVALID_INPUT_FILE


class CheckFailedError(CCMError):
    error_details = ErrorCodes.CHECK_FAILED


class ErrorHandler:
    """Turns exceptions into error records and exit codes"""

    def __init__(self):
        self.error_counts: Dict[str, int] = {}

    def record_error(self, error_details: ErrorDetails):
        """Record error occurrence"""
        self.error_counts[error_details.code] = self.error_counts.get(error_details.code, 0) + 1
        log_debug("Error recorded", {
            "error_code": error_details.code,
            "category": error_details.category.value,
            "severity": error_details.severity.value
        })

    def create_error_record(self, exc: BaseException) -> Dict[str, Any]:
        """Create standardized error record"""
        if isinstance(exc, CCMError):
            error_details = exc.error_details
            message = str(exc)
        else:
            error_details = CCMError.error_details.with_details(exception_type=type(exc).__name__)
            message = str(exc) or type(exc).__name__

        self.record_error(error_details)

        return {
            "code": error_details.code,
            "category": error_details.category.value,
            "severity": error_details.severity.value,
            "message": message,
            "details": {k: _jsonable(v) for k, v in error_details.details.items()},
            "timestamp": datetime.utcnow().isoformat()
        }

    def exit_code_for(self, exc: BaseException) -> int:
        """Map error category to process exit code"""
        if not isinstance(exc, CCMError):
            return EXIT_CODES["internal_error"]
        mapping = {
            ErrorCategory.INPUT: EXIT_CODES["input_error"],
            ErrorCategory.VALIDATION: EXIT_CODES["input_error"],
            ErrorCategory.CONSTRAINT: EXIT_CODES["input_error"],
            ErrorCategory.CAPACITY: EXIT_CODES["input_error"],
            ErrorCategory.SEARCH: EXIT_CODES["line_search_failed"],
            ErrorCategory.CHECK: EXIT_CODES["check_failed"],
        }
        return mapping.get(exc.category, EXIT_CODES["internal_error"])


def _jsonable(value: Any) -> Any:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, complex):
        return [value.real, value.imag]
    if hasattr(value, "item"):
        return _jsonable(value.item())
    return str(value)


# Global error handler instance
error_handler = ErrorHandler()
