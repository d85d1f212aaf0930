"""Custom exceptions."""
from typing import Any, Dict, Optional


class KummerLabError(Exception):
    """Base exception for kummerlab errors."""

    exit_code = 1

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """Machine-readable error object."""
        return {
            "error": type(self).__name__,
            "message": self.message,
            "details": self.details,
        }


class ValidationError(KummerLabError, ValueError):
    """Raised when inputs violate an operation's preconditions."""
    exit_code = 1


class BudgetExceeded(KummerLabError):
    """Raised when an enumeration would exceed its configured budget."""
    exit_code = 2


class MissingLevels(KummerLabError):
    """Raised when a residue system cannot certify carry termination at a prime."""
    exit_code = 1

    def __init__(self, p: int, message: Optional[str] = None):
        super().__init__(
            message or f"residue system lacks the levels needed to certify termination at p={p}",
            {"p": p},
        )
        self.p = p


class MissingLogValue(KummerLabError):
    """Raised when a residue system without log_value is used where log n is needed."""
    exit_code = 1


class VerificationFailed(KummerLabError):
    """Raised when a certificate does not pass."""
    exit_code = 3
