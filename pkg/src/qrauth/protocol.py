"""The login-attempt state machine.

One attempt walks CaptchaPending -> Pending -> Authenticated -> Consumed,
with Pending and Authenticated both able to fall off to Expired.  The
terminal channel sees only the QR and the private token; credentials
travel exclusively through the mobile operations.
"""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass

from .captcha import CaptchaGate
from .qr import QrPayload, QrSymbol, build_payload, encode_qr
from .store import DuplicateHashError, Store
from .tokens import hash_token, is_raw_token, new_token_pair

ACCOUNT_SESSION_TTL = 24 * 3600.0

# mobile-side outcome vocabulary
OK = "ok"
AUTHENTICATED = "authenticated"
BAD_CREDENTIALS = "bad_credentials"
INVALID_TOKEN = "invalid_token"
REUSED_TOKEN = "already_used"
EXPIRED_TOKEN = "expired"

# poll statuses
PENDING = "pending"
READY = "ready"
EXPIRED = "expired"
INVALID = "invalid"


class CaptchaFailed(Exception):
    """The challenge gate rejected the attempt; nothing was minted."""


@dataclass(frozen=True)
class BeginResult:
    private_token: str
    payload: QrPayload
    symbol: QrSymbol


@dataclass(frozen=True)
class MobileResult:
    status: str
    user_id: int | None = None
    remaining_attempts: int | None = None


@dataclass(frozen=True)
class PollResult:
    status: str
    user_id: int | None = None
    session_token: str | None = None
    # binding mismatch: some other terminal's private token hit this row
    cross_terminal: bool = False


class AccountSessions:
    """Post-claim browser sessions: opaque token -> user, with a ttl."""

    def __init__(self, *, clock=time.time, ttl: float = ACCOUNT_SESSION_TTL) -> None:
        self._clock = clock
        self._ttl = ttl
        self._live: dict[str, tuple[int, float]] = {}
        self._lock = threading.Lock()

    def issue(self, user_id: int) -> str:
        token = secrets.token_hex(32)
        with self._lock:
            self._live[token] = (user_id, self._clock())
        return token

    def validate(self, token: str) -> int | None:
        with self._lock:
            entry = self._live.get(token)
            if entry is None:
                return None
            user_id, issued_at = entry
            if self._clock() - issued_at >= self._ttl:
                del self._live[token]
                return None
            return user_id


class LoginProtocol:
    """Drives one store and one captcha gate; safe for concurrent use."""

    def __init__(self, store: Store, gate: CaptchaGate, mobile_base_url: str,
                 *, ec_level: str = "M", clock=time.time) -> None:
        self._store = store
        self._gate = gate
        self._base_url = mobile_base_url
        self._ec_level = ec_level
        self._clock = clock
        self.sessions = AccountSessions(clock=clock)

    @property
    def store(self) -> Store:
        return self._store

    def begin_login(self, challenge_id: str, response: str) -> BeginResult:
        """Mint a pair and its QR after the captcha passes.

        The returned private token is the terminal's claim credential;
        it appears nowhere in the payload or the symbol.
        """
        if not self._gate.verify_challenge(challenge_id, response):
            raise CaptchaFailed()
        while True:
            pair = new_token_pair()
            try:
                self._store.insert_auth_row(pair)
            except DuplicateHashError:
                continue
            break
        payload = build_payload(self._base_url, pair.public_raw)
        symbol = encode_qr(payload.rendered.encode(), self._ec_level)
        return BeginResult(pair.private_raw, payload, symbol)

    def _locate(self, public_token: str) -> tuple[str, object]:
        if not is_raw_token(public_token):
            return INVALID_TOKEN, None
        lookup = self._store.find_by_public_hash(hash_token(public_token))
        if lookup.status == "absent":
            return INVALID_TOKEN, None
        if lookup.status == "expired":
            return EXPIRED_TOKEN, None
        if lookup.row.user_id != 0:
            return REUSED_TOKEN, None
        return OK, lookup.row

    def mobile_begin(self, public_token: str) -> str:
        """May this device submit credentials for the token's attempt?"""
        status, _ = self._locate(public_token)
        return status

    def mobile_complete(self, public_token: str, email: str,
                        password: str) -> MobileResult:
        status, row = self._locate(public_token)
        if status != OK:
            return MobileResult(status)
        user_id = self._store.verify_credentials(email, password)
        if user_id is None:
            remaining = self._store.record_auth_failure(row.public_hash)
            if remaining is None:
                return MobileResult(INVALID_TOKEN)
            return MobileResult(BAD_CREDENTIALS, remaining_attempts=remaining)
        outcome = self._store.mark_authenticated(row.public_hash, user_id)
        if outcome == "updated":
            return MobileResult(AUTHENTICATED, user_id=user_id)
        if outcome == "already_authenticated":
            return MobileResult(REUSED_TOKEN)
        return MobileResult(INVALID_TOKEN)

    def poll_claim(self, private_token: str,
                   terminal_public_hash: str | None) -> PollResult:
        """The terminal's repeated status check; claims on success.

        Ready is one-shot: the winning poll removes the row and walks
        away with a fresh account session token.
        """
        if not is_raw_token(private_token):
            return PollResult(INVALID)
        lookup = self._store.find_by_private_hash(hash_token(private_token))
        if lookup.status == "absent":
            return PollResult(INVALID)
        if lookup.status == "expired":
            return PollResult(EXPIRED)
        row = lookup.row
        if terminal_public_hash != row.public_hash:
            return PollResult(INVALID, cross_terminal=True)
        if row.user_id == 0:
            return PollResult(PENDING)
        claimed = self._store.claim_and_delete(row.private_hash)
        if claimed is None:
            return PollResult(INVALID)
        token = self.sessions.issue(claimed.user_id)
        return PollResult(READY, user_id=claimed.user_id, session_token=token)

    def expire_tick(self) -> int:
        return self._store.sweep_expired()
