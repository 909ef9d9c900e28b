"""Registration, credential verification and session lifecycle.

Raw passwords exist only as transient arguments: they are digested with
scrypt (salted, memory-hard) before anything touches storage, and nothing
here logs or returns them. Clock, token and salt sources are injectable so
tests can pin time and randomness.
"""

from __future__ import annotations

import hashlib
import hmac
import secrets
from dataclasses import dataclass
from datetime import datetime, timedelta

from .errors import (
    DuplicateEmail,
    DuplicateKey,
    InvalidCredentials,
    InvalidEmail,
    Unauthenticated,
    ValidationFailed,
    WeakPassword,
)
from .model import (
    PersonalInfo,
    ProfessionalInfo,
    is_mailbox,
    personal_info_to_dict,
    professional_info_to_dict,
    validate_personal_info,
)
from .storage import Clock, MemoryStore, RecordKey, utc_now

PASSWORD_MIN_LENGTH = 8
DEFAULT_TTL_SECONDS = 24 * 60 * 60

# Work factor for new digests. Stored digests carry their own parameters, so
# this can change without invalidating existing credentials.
SCRYPT_N = 2**14
SCRYPT_R = 8
SCRYPT_P = 1


@dataclass
class Session:
    """A live authenticated handle. ``expires_at`` is an ISO timestamp."""

    token: str
    user_id: str
    expires_at: str


def make_digest(
    password: str, salt: bytes, n: int = SCRYPT_N, r: int = SCRYPT_R, p: int = SCRYPT_P
) -> str:
    """Digest a password as ``scrypt$n$r$p$salthex$hashhex``."""
    raw = hashlib.scrypt(password.encode("utf-8"), salt=salt, n=n, r=r, p=p)
    return f"scrypt${n}${r}${p}${salt.hex()}${raw.hex()}"


def verify_digest(password: str, digest: str) -> bool:
    try:
        scheme, n, r, p, salt_hex, hash_hex = digest.split("$")
        if scheme != "scrypt":
            return False
        raw = hashlib.scrypt(
            password.encode("utf-8"),
            salt=bytes.fromhex(salt_hex),
            n=int(n),
            r=int(r),
            p=int(p),
        )
    except (ValueError, TypeError):
        return False
    return hmac.compare_digest(raw.hex(), hash_hex)


class AccountService:
    """User registration and session management over a store."""

    def __init__(
        self,
        store: MemoryStore,
        *,
        clock: Clock | None = None,
        token_source=None,
        salt_source=None,
        ttl_seconds: int = DEFAULT_TTL_SECONDS,
        scrypt_n: int = SCRYPT_N,
        scrypt_r: int = SCRYPT_R,
        scrypt_p: int = SCRYPT_P,
    ):
        self._store = store
        self._clock = clock or utc_now
        self._token_source = token_source or (lambda: secrets.token_urlsafe(32))
        self._salt_source = salt_source or (lambda: secrets.token_bytes(16))
        self._ttl = timedelta(seconds=ttl_seconds)
        self._scrypt = (scrypt_n, scrypt_r, scrypt_p)

    def register(
        self, email: str, password: str, first_name: str, last_name: str
    ) -> str:
        """Create a user with minimal personal info; returns the user id."""
        if not is_mailbox(email):
            raise InvalidEmail(f"{email!r} is not a mailbox address")
        if len(password) < PASSWORD_MIN_LENGTH:
            raise WeakPassword(
                f"password must be at least {PASSWORD_MIN_LENGTH} characters"
            )
        personal = PersonalInfo(
            first_name=first_name, last_name=last_name, email=email
        )
        report = validate_personal_info(personal, today=self._clock().date())
        if not report.valid:
            raise ValidationFailed("invalid registration", violations=report.violations)
        n, r, p = self._scrypt
        digest = make_digest(password, self._salt_source(), n=n, r=r, p=p)
        record = {
            "personal": personal_info_to_dict(personal),
            "professional": professional_info_to_dict(ProfessionalInfo()),
            "credential": {"password_digest": digest},
        }
        try:
            key = self._store.create("user", record)
        except DuplicateKey:
            raise DuplicateEmail(f"email {email!r} is already registered") from None
        return key.id

    def authenticate(self, email: str, password: str) -> Session:
        """Verify credentials and open a fresh session.

        Wrong password and unknown email fail identically: callers learn
        nothing about whether an account exists.
        """
        user = self._find_user(email)
        if user is None or not verify_digest(
            password, user["credential"]["password_digest"]
        ):
            raise InvalidCredentials("invalid email or password")
        expires_at = (self._clock() + self._ttl).isoformat()
        for _ in range(3):
            token = self._token_source()
            try:
                self._store.create(
                    "session",
                    {"token": token, "user_id": user["id"], "expires_at": expires_at},
                )
            except DuplicateKey:
                continue
            return Session(token=token, user_id=user["id"], expires_at=expires_at)
        raise DuplicateKey("could not draw a unique session token")

    def resolve_session(self, token: str) -> str:
        """Return the user id bound to a live token."""
        session = self._find_session(token)
        if session is None:
            raise Unauthenticated("missing or invalid session token")
        if datetime.fromisoformat(session["expires_at"]) <= self._clock():
            raise Unauthenticated("session expired")
        return session["user_id"]

    def revoke_session(self, token: str) -> None:
        """Forget a token; revoking an unknown token is a no-op."""
        session = self._find_session(token)
        if session is not None:
            self._store.delete(RecordKey("session", session["id"]))

    def _find_user(self, email: str) -> dict | None:
        folded = email.casefold()
        for user in self._store.scan("user"):
            if user["personal"]["email"].casefold() == folded:
                return user
        return None

    def _find_session(self, token: str) -> dict | None:
        if not token:
            return None
        for session in self._store.scan("session"):
            if session["token"] == token:
                return session
        return None
