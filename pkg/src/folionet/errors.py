"""Error taxonomy shared by storage, accounts, service and HTTP layers.

Every error carries a stable machine-readable ``code``. The HTTP layer maps
codes to transport statuses; nothing above it inspects exception classes.
"""

from __future__ import annotations


class ServiceError(Exception):
    """Base class for all expected, client-visible failures."""

    code = "internal"

    def __init__(self, message: str = "", *, violations: list | None = None):
        super().__init__(message or self.code)
        self.message = message or self.code
        # Populated only for validation_failed; list of (field_path, message).
        self.violations = violations or []


class Malformed(ServiceError):
    """Request body or parameter could not be parsed at all."""

    code = "malformed"


class ValidationFailed(ServiceError):
    code = "validation_failed"


class Unauthenticated(ServiceError):
    code = "unauthenticated"


class Forbidden(ServiceError):
    code = "forbidden"


class NotFound(ServiceError):
    code = "not_found"


class DuplicateKey(ServiceError):
    """A storage unique constraint failed; ``constraint`` names which one."""

    code = "duplicate_key"

    def __init__(self, message: str = "", *, constraint: str = ""):
        super().__init__(message)
        self.constraint = constraint


class IntegrityViolation(ServiceError):
    """A record referenced an absent user or project.

    Storage-internal: the service layer re-raises this as NotFound before it
    can reach the wire.
    """

    code = "integrity_violation"


class ImmutableFieldChanged(ServiceError):
    code = "immutable_field_changed"


class DuplicateEmail(ServiceError):
    code = "duplicate_email"


class DuplicateMembership(ServiceError):
    code = "duplicate_membership"


class InvalidPage(ServiceError):
    code = "invalid_page"


class EmptyKeyword(ServiceError):
    code = "empty_keyword"


class WeakPassword(ServiceError):
    code = "weak_password"


class InvalidEmail(ServiceError):
    code = "invalid_email"


class InvalidCredentials(ServiceError):
    code = "invalid_credentials"
