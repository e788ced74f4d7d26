"""One-time access token pairs and their fixed-length hashes.

Every login attempt mints a pair of independent 10-character random
secrets: the *public* token travels to the phone inside the QR payload,
the *private* token stays with the terminal browser and is the only
credential that can claim the finished session.  Only the hashes of the
two tokens are ever persisted.
"""

from __future__ import annotations

import hashlib
import hmac
import re
import secrets
from dataclasses import dataclass

TOKEN_LENGTH = 10
TOKEN_ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789"

_TOKEN_RE = re.compile(r"^[A-Za-z0-9]{10}$")
_HASH_RE = re.compile(r"^[0-9a-f]{40}$")

# The digest is a named, swappable component: every module hashes tokens
# through hash_token() and nothing else, so switching the algorithm here
# changes the stored hash length but no other code.
TOKEN_DIGEST = "sha1"

_rng = secrets.SystemRandom()


class TokenFormatError(ValueError):
    """Raised when a string is not a well-formed raw token."""


def is_raw_token(value: str) -> bool:
    """True iff value is exactly 10 characters from the 62-char alphabet."""
    return bool(_TOKEN_RE.match(value))


def is_token_hash(value: str) -> bool:
    """True iff value is a 40-char lowercase hex digest."""
    return bool(_HASH_RE.match(value))


def generate_token(rng=None) -> str:
    """Draw a fresh 10-character token, uniform over the 62^10 space.

    ``rng`` defaults to a system randomness source; pass a seeded
    ``random.Random`` only in tests.  A failing system source raises,
    it never degrades to weak randomness.
    """
    r = rng if rng is not None else _rng
    return "".join(r.choice(TOKEN_ALPHABET) for _ in range(TOKEN_LENGTH))


def digest_hex(data: bytes, algorithm: str = TOKEN_DIGEST) -> str:
    """Lowercase hex digest of raw bytes (test hook; tokens use hash_token)."""
    return hashlib.new(algorithm, data).hexdigest()


def hash_token(token: str) -> str:
    """Digest of a raw token's ASCII bytes, as lowercase hex.

    Deterministic; the sole hashing path for access tokens.
    """
    if not is_raw_token(token):
        raise TokenFormatError(f"not a valid raw token: {token!r}")
    return digest_hex(token.encode("ascii"))


@dataclass(frozen=True)
class TokenPair:
    """The per-login-attempt public/private tokens and their hashes."""

    public_raw: str
    private_raw: str
    public_hash: str
    private_hash: str


def new_token_pair(rng=None) -> TokenPair:
    """Mint a pair of distinct raw tokens with their hashes."""
    public = generate_token(rng)
    private = generate_token(rng)
    while private == public:  # negligible odds, but the invariant is hard
        private = generate_token(rng)
    return TokenPair(
        public_raw=public,
        private_raw=private,
        public_hash=hash_token(public),
        private_hash=hash_token(private),
    )


def constant_time_equals(a: str, b: str) -> bool:
    """Compare two token hashes without a timing side channel."""
    return hmac.compare_digest(a.encode("ascii"), b.encode("ascii"))
