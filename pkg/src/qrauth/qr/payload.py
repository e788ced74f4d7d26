"""The mobile URL payload: base URL plus the public access token.

The rendered form is ``<mobile_base_url>?pub=<public_token>`` and must
round-trip exactly.  It carries the public token only; the private token
never enters a payload.
"""

from __future__ import annotations

from dataclasses import dataclass
from urllib.parse import parse_qsl, urlsplit

from ..tokens import is_raw_token

PUBLIC_TOKEN_PARAM = "pub"


class PayloadError(ValueError):
    """Raised for malformed base URLs, tokens, or rendered payloads."""


@dataclass(frozen=True)
class QrPayload:
    mobile_base_url: str
    public_token: str
    rendered: str


def validate_base_url(base_url: str) -> None:
    parts = urlsplit(base_url)
    if not parts.scheme or not parts.netloc:
        raise PayloadError(f"base URL must be absolute: {base_url!r}")
    if parts.query:
        raise PayloadError(f"base URL must not carry a query string: {base_url!r}")
    if parts.fragment:
        raise PayloadError(f"base URL must not carry a fragment: {base_url!r}")


def build_payload(base_url: str, public_token: str) -> QrPayload:
    """Assemble the payload string for the QR symbol."""
    validate_base_url(base_url)
    if not is_raw_token(public_token):
        raise PayloadError("public token is not a well-formed raw token")
    return QrPayload(
        mobile_base_url=base_url,
        public_token=public_token,
        rendered=f"{base_url}?{PUBLIC_TOKEN_PARAM}={public_token}",
    )


def parse_payload(rendered: str) -> QrPayload:
    """Inverse of build_payload; rejects anything but the canonical form."""
    base, sep, query = rendered.partition("?")
    if not sep:
        raise PayloadError("payload has no query string")
    params = parse_qsl(query, keep_blank_values=True)
    if len(params) != 1 or params[0][0] != PUBLIC_TOKEN_PARAM:
        raise PayloadError(f"payload query must be exactly '{PUBLIC_TOKEN_PARAM}=<token>'")
    token = params[0][1]
    if not is_raw_token(token):
        raise PayloadError("payload token is not a well-formed raw token")
    validate_base_url(base)
    return QrPayload(mobile_base_url=base, public_token=token, rendered=rendered)
