"""Cross-device QR login: token pairs, session protocol, and the QR codec."""

from .captcha import ArithmeticProvider, CaptchaGate, Challenge, FixedProvider
from .config import ConfigError, ServiceConfig, load_config
from .protocol import (
    BeginResult,
    CaptchaFailed,
    LoginProtocol,
    MobileResult,
    PollResult,
)
from .service import ServeError, ServiceHandle, create_app, serve
from .store import (
    AuthRow,
    DuplicateEmailError,
    DuplicateHashError,
    MemoryStore,
    SqliteStore,
    Store,
    UserAccount,
    ValidationError,
    open_store,
)
from .tokens import (
    TOKEN_ALPHABET,
    TOKEN_LENGTH,
    TokenFormatError,
    TokenPair,
    generate_token,
    hash_token,
    new_token_pair,
)

__all__ = [
    "ArithmeticProvider",
    "AuthRow",
    "BeginResult",
    "CaptchaFailed",
    "CaptchaGate",
    "Challenge",
    "ConfigError",
    "DuplicateEmailError",
    "DuplicateHashError",
    "FixedProvider",
    "LoginProtocol",
    "MemoryStore",
    "MobileResult",
    "PollResult",
    "ServeError",
    "ServiceConfig",
    "ServiceHandle",
    "SqliteStore",
    "Store",
    "TOKEN_ALPHABET",
    "TOKEN_LENGTH",
    "TokenFormatError",
    "TokenPair",
    "UserAccount",
    "ValidationError",
    "create_app",
    "generate_token",
    "hash_token",
    "load_config",
    "new_token_pair",
    "open_store",
    "serve",
]
