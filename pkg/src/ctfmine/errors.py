"""Exception types shared across the toolkit."""

from __future__ import annotations


class CtfmineError(Exception):
    """Base class for all toolkit errors."""


class EmptyLogError(CtfmineError):
    """Raised when an operation is left with zero usable events."""

    def __init__(self, message: str, warnings: list | None = None):
        super().__init__(message)
        self.warnings = warnings or []


class ManifestError(CtfmineError):
    """Raised when a session manifest document is invalid."""


class PolicyError(CtfmineError):
    """Raised when a mapping policy is invalid."""


class PolicyMismatchError(CtfmineError):
    """Raised when two logs being compared do not share a raw source."""


class UnknownTaskError(CtfmineError):
    """Raised when a drill-down targets a task absent from the log."""


class UnknownMetricError(CtfmineError):
    """Raised when an overview metric name is not a puzzle metric field."""


class RenderError(CtfmineError):
    """Raised when render options are inconsistent with the model."""


class ModelDecodeError(CtfmineError):
    """Raised when a serialized model document fails validation.

    ``path`` holds a JSON-path locator for the offending element.
    """

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
