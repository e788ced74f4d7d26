"""Persistence for user accounts and the per-attempt token-hash table.

Two interchangeable backends: an in-memory store for tests and a
single-file SQLite store for deployment.  Every operation is
linearizable; the read-modify-write operations (mark_authenticated,
claim_and_delete, record_auth_failure) are atomic.

Row lifetime: a row older than the ttl is dead.  Lookups report it as
expired exactly once (deleting it in passing) and absent afterwards;
a periodic sweep_expired clears aged rows wholesale.
"""

from __future__ import annotations

import hashlib
import hmac
import os
import re
import sqlite3
import threading
import time
from dataclasses import dataclass, replace

from .tokens import TokenPair

DEFAULT_SESSION_TTL = 600.0
MAX_AUTH_FAILURES = 5

PBKDF2_ITERATIONS = 100_000
_PBKDF2_SCHEME = "pbkdf2-sha256"

_EMAIL_RE = re.compile(r"^[^@\s]+@[^@\s]+\.[^@\s]+$")
MIN_PASSWORD_LENGTH = 8

# lookup outcomes; EXPIRED is reported once, then the row is gone
LIVE = "live"
EXPIRED = "expired"
ABSENT = "absent"


class StoreError(Exception):
    """Base class for store failures."""


class ValidationError(StoreError):
    pass


class DuplicateEmailError(StoreError):
    pass


class DuplicateHashError(StoreError):
    pass


@dataclass(frozen=True)
class UserAccount:
    user_id: int
    email: str
    credential_hash: str
    created_at: float


@dataclass(frozen=True)
class AuthRow:
    public_hash: str
    private_hash: str
    user_id: int
    verified: bool
    created_at: float
    authenticated_at: float | None
    failed_attempts: int


@dataclass(frozen=True)
class RowLookup:
    status: str  # LIVE, EXPIRED, or ABSENT
    row: AuthRow | None


def hash_password(password: str, *, iterations: int = PBKDF2_ITERATIONS,
                  salt: bytes | None = None) -> str:
    """Salted slow hash, encoded as scheme$iterations$salt$digest."""
    if salt is None:
        salt = os.urandom(16)
    digest = hashlib.pbkdf2_hmac("sha256", password.encode(), salt, iterations)
    return f"{_PBKDF2_SCHEME}${iterations}${salt.hex()}${digest.hex()}"


def check_password(password: str, encoded: str) -> bool:
    try:
        scheme, iter_s, salt_hex, digest_hex = encoded.split("$")
        iterations = int(iter_s)
        salt = bytes.fromhex(salt_hex)
        expected = bytes.fromhex(digest_hex)
    except ValueError:
        return False
    if scheme != _PBKDF2_SCHEME:
        return False
    actual = hashlib.pbkdf2_hmac("sha256", password.encode(), salt, iterations)
    return hmac.compare_digest(actual, expected)


class Store:
    """Shared behaviour; subclasses provide the raw row primitives."""

    def __init__(self, *, clock=time.time, session_ttl: float = DEFAULT_SESSION_TTL,
                 pbkdf2_iterations: int = PBKDF2_ITERATIONS) -> None:
        self._clock = clock
        self._ttl = session_ttl
        self._iterations = pbkdf2_iterations
        # burned on unknown-email logins so timing matches the known path
        self._dummy_hash = hash_password("!", iterations=pbkdf2_iterations)

    @property
    def session_ttl(self) -> float:
        return self._ttl

    def now(self) -> float:
        return self._clock()

    # -- accounts ------------------------------------------------------

    def create_user(self, email: str, password: str) -> UserAccount:
        email = email.strip().lower()
        if not _EMAIL_RE.match(email):
            raise ValidationError(f"not a valid email address: {email!r}")
        if len(password) < MIN_PASSWORD_LENGTH:
            raise ValidationError(
                f"password must be at least {MIN_PASSWORD_LENGTH} characters")
        encoded = hash_password(password, iterations=self._iterations)
        return self._insert_user(email, encoded, self.now())

    def verify_credentials(self, email: str, password: str) -> int | None:
        """user_id on a match, None otherwise; unknown email and wrong
        password are indistinguishable to the caller."""
        account = self._get_user(email.strip().lower())
        if account is None:
            check_password(password, self._dummy_hash)
            return None
        if check_password(password, account.credential_hash):
            return account.user_id
        return None

    # -- auth rows -----------------------------------------------------

    def insert_auth_row(self, pair: TokenPair) -> AuthRow:
        row = AuthRow(
            public_hash=pair.public_hash,
            private_hash=pair.private_hash,
            user_id=0,
            verified=True,
            created_at=self.now(),
            authenticated_at=None,
            failed_attempts=0,
        )
        self._insert_row(row)
        return row

    def find_by_public_hash(self, public_hash: str) -> RowLookup:
        return self._lookup("public", public_hash)

    def find_by_private_hash(self, private_hash: str) -> RowLookup:
        return self._lookup("private", private_hash)

    def _lookup(self, key: str, value: str) -> RowLookup:
        with self._lock:
            row = self._get_row(key, value)
            if row is None:
                return RowLookup(ABSENT, None)
            if self.now() - row.created_at >= self._ttl:
                self._delete_row(row.public_hash)
                return RowLookup(EXPIRED, None)
            return RowLookup(LIVE, row)

    def mark_authenticated(self, public_hash: str, user_id: int) -> str:
        """CAS: set user_id iff the row exists with user_id 0."""
        if user_id < 1:
            raise ValidationError("user_id must be >= 1")
        with self._lock:
            row = self._get_row("public", public_hash)
            if row is None or self.now() - row.created_at >= self._ttl:
                if row is not None:
                    self._delete_row(row.public_hash)
                return "not_found"
            if row.user_id != 0:
                return "already_authenticated"
            self._update_row(replace(row, user_id=user_id,
                                     authenticated_at=self.now()))
            return "updated"

    def claim_and_delete(self, private_hash: str) -> AuthRow | None:
        """One-shot removal; at most one caller ever receives the row."""
        with self._lock:
            row = self._get_row("private", private_hash)
            if row is None:
                return None
            self._delete_row(row.public_hash)
            if self.now() - row.created_at >= self._ttl:
                return None
            return row

    def record_auth_failure(self, public_hash: str) -> int | None:
        """Count a bad credential attempt; rows die at the failure cap.

        Returns attempts remaining after this one, or None when the row
        does not exist (already dead or never present).
        """
        with self._lock:
            row = self._get_row("public", public_hash)
            if row is None:
                return None
            if self.now() - row.created_at >= self._ttl:
                self._delete_row(row.public_hash)
                return None
            failures = row.failed_attempts + 1
            if failures >= MAX_AUTH_FAILURES:
                self._delete_row(row.public_hash)
                return 0
            self._update_row(replace(row, failed_attempts=failures))
            return MAX_AUTH_FAILURES - failures

    def sweep_expired(self, ttl: float | None = None) -> int:
        ttl = self._ttl if ttl is None else ttl
        cutoff = self.now() - ttl
        with self._lock:
            return self._delete_older_than(cutoff)

    def dump_rows(self) -> list[AuthRow]:
        """Raw snapshot for the maintenance CLI; no expiry side effects."""
        with self._lock:
            return self._all_rows()

    def close(self) -> None:
        pass

    # -- backend primitives (called under self._lock where noted) ------

    _lock: threading.RLock

    def _insert_user(self, email: str, encoded: str, now: float) -> UserAccount:
        raise NotImplementedError

    def _get_user(self, email: str) -> UserAccount | None:
        raise NotImplementedError

    def _insert_row(self, row: AuthRow) -> None:
        raise NotImplementedError

    def _get_row(self, key: str, value: str) -> AuthRow | None:
        raise NotImplementedError

    def _update_row(self, row: AuthRow) -> None:
        raise NotImplementedError

    def _delete_row(self, public_hash: str) -> None:
        raise NotImplementedError

    def _delete_older_than(self, cutoff: float) -> int:
        raise NotImplementedError

    def _all_rows(self) -> list[AuthRow]:
        raise NotImplementedError


class MemoryStore(Store):
    """Dict-backed store; suitable for tests and single-process runs."""

    def __init__(self, **kwargs) -> None:
        super().__init__(**kwargs)
        self._lock = threading.RLock()
        self._users: dict[str, UserAccount] = {}
        self._next_user_id = 1
        self._rows: dict[str, AuthRow] = {}
        self._by_private: dict[str, str] = {}

    def _insert_user(self, email: str, encoded: str, now: float) -> UserAccount:
        with self._lock:
            if email in self._users:
                raise DuplicateEmailError(f"account exists for {email}")
            account = UserAccount(self._next_user_id, email, encoded, now)
            self._next_user_id += 1
            self._users[email] = account
            return account

    def _get_user(self, email: str) -> UserAccount | None:
        with self._lock:
            return self._users.get(email)

    def _insert_row(self, row: AuthRow) -> None:
        with self._lock:
            if row.public_hash in self._rows or row.private_hash in self._by_private:
                raise DuplicateHashError("token hash already present")
            self._rows[row.public_hash] = row
            self._by_private[row.private_hash] = row.public_hash

    def _get_row(self, key: str, value: str) -> AuthRow | None:
        if key == "private":
            value = self._by_private.get(value, "")
        return self._rows.get(value)

    def _update_row(self, row: AuthRow) -> None:
        self._rows[row.public_hash] = row

    def _delete_row(self, public_hash: str) -> None:
        row = self._rows.pop(public_hash, None)
        if row is not None:
            self._by_private.pop(row.private_hash, None)

    def _delete_older_than(self, cutoff: float) -> int:
        doomed = [h for h, r in self._rows.items() if r.created_at <= cutoff]
        for h in doomed:
            self._delete_row(h)
        return len(doomed)

    def _all_rows(self) -> list[AuthRow]:
        return list(self._rows.values())


_SCHEMA = """
CREATE TABLE IF NOT EXISTS users (
    user_id INTEGER PRIMARY KEY AUTOINCREMENT,
    email TEXT NOT NULL UNIQUE,
    credential_hash TEXT NOT NULL,
    created_at REAL NOT NULL
);
CREATE TABLE IF NOT EXISTS auth_rows (
    public_hash TEXT PRIMARY KEY,
    private_hash TEXT NOT NULL UNIQUE,
    user_id INTEGER NOT NULL DEFAULT 0,
    verified INTEGER NOT NULL DEFAULT 1,
    created_at REAL NOT NULL,
    authenticated_at REAL,
    failed_attempts INTEGER NOT NULL DEFAULT 0
);
"""


class SqliteStore(Store):
    """Single-file store; one connection serialized behind a lock."""

    def __init__(self, path: str, **kwargs) -> None:
        super().__init__(**kwargs)
        self._lock = threading.RLock()
        self._conn = sqlite3.connect(path, check_same_thread=False)
        self._conn.execute("PRAGMA journal_mode=WAL")
        self._conn.executescript(_SCHEMA)
        self._conn.commit()

    def close(self) -> None:
        self._conn.close()

    def _insert_user(self, email: str, encoded: str, now: float) -> UserAccount:
        with self._lock:
            try:
                cur = self._conn.execute(
                    "INSERT INTO users (email, credential_hash, created_at)"
                    " VALUES (?, ?, ?)",
                    (email, encoded, now),
                )
                self._conn.commit()
            except sqlite3.IntegrityError:
                self._conn.rollback()
                raise DuplicateEmailError(f"account exists for {email}") from None
            return UserAccount(cur.lastrowid, email, encoded, now)

    def _get_user(self, email: str) -> UserAccount | None:
        with self._lock:
            cur = self._conn.execute(
                "SELECT user_id, email, credential_hash, created_at"
                " FROM users WHERE email = ?",
                (email,),
            )
            got = cur.fetchone()
        return None if got is None else UserAccount(*got)

    @staticmethod
    def _row_from(record) -> AuthRow:
        pub, priv, uid, verified, created, auth_at, failures = record
        return AuthRow(pub, priv, uid, bool(verified), created, auth_at, failures)

    def _insert_row(self, row: AuthRow) -> None:
        with self._lock:
            try:
                self._conn.execute(
                    "INSERT INTO auth_rows VALUES (?, ?, ?, ?, ?, ?, ?)",
                    (row.public_hash, row.private_hash, row.user_id,
                     int(row.verified), row.created_at, row.authenticated_at,
                     row.failed_attempts),
                )
                self._conn.commit()
            except sqlite3.IntegrityError:
                self._conn.rollback()
                raise DuplicateHashError("token hash already present") from None

    def _get_row(self, key: str, value: str) -> AuthRow | None:
        column = "public_hash" if key == "public" else "private_hash"
        cur = self._conn.execute(
            f"SELECT * FROM auth_rows WHERE {column} = ?", (value,))
        got = cur.fetchone()
        return None if got is None else self._row_from(got)

    def _update_row(self, row: AuthRow) -> None:
        self._conn.execute(
            "UPDATE auth_rows SET user_id = ?, authenticated_at = ?,"
            " failed_attempts = ? WHERE public_hash = ?",
            (row.user_id, row.authenticated_at, row.failed_attempts,
             row.public_hash),
        )
        self._conn.commit()

    def _delete_row(self, public_hash: str) -> None:
        self._conn.execute(
            "DELETE FROM auth_rows WHERE public_hash = ?", (public_hash,))
        self._conn.commit()

    def _delete_older_than(self, cutoff: float) -> int:
        cur = self._conn.execute(
            "DELETE FROM auth_rows WHERE created_at <= ?", (cutoff,))
        self._conn.commit()
        return cur.rowcount

    def _all_rows(self) -> list[AuthRow]:
        cur = self._conn.execute("SELECT * FROM auth_rows")
        return [self._row_from(r) for r in cur.fetchall()]


def open_store(path: str | None = None, **kwargs) -> Store:
    """MemoryStore when path is None or ':memory:', else SqliteStore."""
    if path is None or path == ":memory:":
        return MemoryStore(**kwargs)
    return SqliteStore(path, **kwargs)
