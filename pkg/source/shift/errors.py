"""Centralized error handling for graphshift."""

import json
from dataclasses import dataclass
from enum import IntEnum
from typing import TypeAlias

# Error codes grouped by category (ranges of 1000)
# 1000-1099: Vertex encoding errors
# 2000-2099: Graph / truncation / resource errors
# 3000-3099: Lp calculus and certification errors
# 4000-4099: Kernel and tree-spec errors
# 5000-5099: Polynomial and spectrum errors
# 6000-6099: Command-line errors


class ErrorCode(IntEnum):
    """Standardized error codes."""

    # Encoding Errors (1000-1099)
    ENC_MALFORMED_TEXT = 1001
    ENC_WRONG_VARIANT = 1002
    ENC_INVALID_FIELD = 1003

    # Graph Errors (2000-2099)
    GRAPH_INVALID_VERTEX = 2001
    GRAPH_NEGATIVE_RADIUS = 2002
    GRAPH_RESOURCE_CAP = 2003
    GRAPH_INDEX_RANGE = 2004
    GRAPH_EMPTY_INTERIOR = 2005
    GRAPH_INVALID_PARAMS = 2006
    GRAPH_DEGREE_BOUND = 2007

    # Lp Errors (3000-3099)
    LP_INVALID_EXPONENT = 3001
    LP_MIXED_MODES = 3002
    LP_RADIUS_TOO_SMALL = 3003
    LP_INVALID_WITNESS = 3004
    LP_FOREIGN_TRUNCATION = 3005

    # Kernel Errors (4000-4099)
    KERNEL_INVALID_SPEC = 4001
    KERNEL_ODD_DEPTH = 4002
    KERNEL_LEAF = 4003
    KERNEL_NOT_TREE = 4004
    KERNEL_INFINITE_EXPONENT = 4005
    KERNEL_NOT_KERNEL_SHAPED = 4006

    # Polynomial / Spectrum Errors (5000-5099)
    POLY_INVALID_FAMILY = 5001
    POLY_INVALID_INTERVAL = 5002
    SPEC_NO_DECAY = 5003
    SPEC_DEPTH_TOO_SMALL = 5004
    SPEC_WRONG_BRANCH = 5005

    # CLI Errors (6000-6099)
    CLI_USAGE = 6001
    CLI_UNKNOWN_FAMILY = 6002
    CLI_INTERNAL = 6003


_CATEGORIES = {1: "encoding", 2: "graph", 3: "lp", 4: "kernel", 5: "spectrum", 6: "cli"}

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class Severity(IntEnum):
    """How far a problem invalidates the computed payload."""
    WARNING = 1  # payload still valid, bound may be loose
    ERROR = 2
    FATAL = 3  # raised outside any graphshift precondition


@dataclass(frozen=True, slots=True)
class ErrorInfo:
    """One diagnostic: a code, its message and where it was raised."""
    code: ErrorCode
    message: str
    severity: Severity = Severity.ERROR
    context: str | None = None

    @property
    def category(self) -> str:
        return _CATEGORIES.get(self.code // 1000, "unknown")

    def to_dict(self) -> dict:
        record = {
            "code": int(self.code),
            "category": self.category,
            "message": self.message,
            "severity": self.severity.name.lower(),
        }
        if self.context:
            record["context"] = self.context
        return record

    def __str__(self) -> str:
        return f"E{int(self.code)}: {self.message}"


class ShiftError(Exception):
    """Base exception for all graphshift errors.

    Subclasses fix the process exit code the command line reports for them.
    """

    exit_code = EXIT_USAGE

    def __init__(self, info: ErrorInfo):
        self.info = info
        super().__init__(str(info))

    @classmethod
    def create(cls, code: ErrorCode, msg: str,
               severity: Severity = Severity.ERROR, context: str | None = None):
        return cls(ErrorInfo(code, msg, severity, context))

    def to_dict(self) -> dict:
        return self.info.to_dict()


class EncodingError(ShiftError):
    """Malformed or mismatched vertex encodings."""


class ResourceError(ShiftError):
    """A configured resource cap would be exceeded."""

    exit_code = EXIT_RESOURCE


class DomainError(ShiftError):
    """Precondition or hypothesis violation."""


class CertificationError(ShiftError):
    """A certified quantity would be contaminated by the truncation boundary."""


class UsageError(ShiftError):
    """Command-line usage errors."""


ErrorList: TypeAlias = list[ErrorInfo]


def collect_errors(*errors: ErrorInfo | ShiftError | None) -> ErrorList:
    """Diagnostics from raised errors and bare infos, dropping None."""
    return [e.info if isinstance(e, ShiftError) else e for e in errors if e is not None]


def errors_to_response(errors: ErrorList, include_warnings: bool = True) -> list[dict]:
    floor = Severity.WARNING if include_warnings else Severity.ERROR
    return [e.to_dict() for e in errors if e.severity >= floor]


def has_fatal(errors: ErrorList) -> bool:
    return any(e.severity is Severity.FATAL for e in errors)


def error_summary(errors: ErrorList) -> str:
    """One line joining every diagnostic, for the stderr message field."""
    return "; ".join(map(str, errors)) or "No errors"


def diagnostic_line(*errors: ErrorInfo | ShiftError) -> str:
    """The single JSON line a failed command prints on stderr."""
    infos = collect_errors(*errors)
    return json.dumps({"error": True, "message": error_summary(infos), "errors": errors_to_response(infos)})
