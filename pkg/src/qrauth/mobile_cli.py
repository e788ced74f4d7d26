"""The `qrauth-mobile` command: the phone side of a login, in CLI form.

scan   - decode a QR PNG (or parse a payload URL) and print its fields.
login  - scan, then submit credentials over the mobile channel.
logout - forget a remembered login.
"""

from __future__ import annotations

import os
import sys
from pathlib import Path
from urllib.parse import urlsplit, urlunsplit

import click
import httpx

from . import credstore
from .qr import (
    DecodeError,
    PayloadError,
    PngFormatError,
    QrPayload,
    QrSymbol,
    decode_qr,
    matrix_from_png,
    parse_payload,
)

PASSPHRASE_ENV = "QRAUTH_PASSPHRASE"


class ScanError(click.ClickException):
    pass


def scan_input(source: str) -> QrPayload:
    """PNG file path or raw payload URL -> parsed payload."""
    if source.endswith(".png") or os.path.exists(source):
        try:
            blob = Path(source).read_bytes()
        except OSError as exc:
            raise ScanError(f"cannot read {source}: {exc}") from None
        return _scan_png(blob)
    try:
        return parse_payload(source)
    except PayloadError as exc:
        raise ScanError(f"parse error: {exc}") from None


def _scan_png(blob: bytes) -> QrPayload:
    try:
        candidates = matrix_from_png(blob)
    except (PngFormatError, ValueError) as exc:
        raise ScanError(f"scan error: {exc}") from None
    for grid in candidates:
        version = (len(grid) - 17) // 4
        # ec level and mask are read from the symbol's own format info
        symbol = QrSymbol(version=version, ec_level="M", matrix=grid, mask_id=0)
        try:
            rendered = decode_qr(symbol).decode()
            return parse_payload(rendered)
        except (DecodeError, PayloadError, UnicodeDecodeError):
            continue
    raise ScanError("scan error: no decodable symbol in image")


def login_url_for(base_url: str) -> str:
    """The credential-submission endpoint next to the auth base URL."""
    parts = urlsplit(base_url)
    path = parts.path.rsplit("/", 1)[0] + "/login"
    return urlunsplit((parts.scheme, parts.netloc, path, "", ""))


def origin_of(base_url: str) -> str:
    parts = urlsplit(base_url)
    return f"{parts.scheme}://{parts.netloc}"


@click.group()
def main() -> None:
    """Mobile authenticator for QR login."""


@main.command()
@click.argument("source")
def scan(source: str) -> None:
    """Decode a QR PNG or parse a payload URL."""
    payload = scan_input(source)
    click.echo(f"mobile url: {payload.mobile_base_url}")
    click.echo(f"public token: {payload.public_token}")


def _resolve_credentials(origin: str, email: str | None,
                         password_stdin: bool) -> tuple[str, str]:
    if email is not None:
        if password_stdin:
            password = sys.stdin.readline().rstrip("\n")
        else:
            password = click.prompt("password", hide_input=True)
        return email, password
    remembered = credstore.stored_email(origin)
    if remembered is not None:
        click.echo(f"using remembered login for {remembered} at {origin}")
        passphrase = os.environ.get(PASSPHRASE_ENV)
        if passphrase is None:
            passphrase = click.prompt("passphrase", hide_input=True)
        try:
            return credstore.load_credential(origin, passphrase)
        except credstore.WrongPassphraseError:
            raise click.ClickException("wrong passphrase") from None
    email = click.prompt("email")
    password = click.prompt("password", hide_input=True)
    return email, password


def _remember(origin: str, email: str, password: str) -> None:
    passphrase = os.environ.get(PASSPHRASE_ENV)
    if passphrase is None:
        passphrase = click.prompt("passphrase to protect the stored login",
                                  hide_input=True, confirmation_prompt=True)
    credstore.save_credential(origin, email, password, passphrase)
    click.echo(f"remembered login for {email} at {origin}")


@main.command()
@click.argument("source")
@click.option("--email", default=None, help="Account email address.")
@click.option("--password-stdin", is_flag=True,
              help="Read the password from standard input.")
@click.option("--remember", is_flag=True,
              help="Store the credential (encrypted) after success.")
def login(source: str, email: str | None, password_stdin: bool,
          remember: bool) -> None:
    """Scan a session's QR and authenticate it from this device."""
    payload = scan_input(source)
    origin = origin_of(payload.mobile_base_url)
    email, password = _resolve_credentials(origin, email, password_stdin)

    with httpx.Client(timeout=10) as client:
        auth = client.get(payload.mobile_base_url,
                          params={"pub": payload.public_token})
        if auth.status_code == 401:
            raise click.ClickException("session invalid or expired")
        auth.raise_for_status()
        done = client.post(login_url_for(payload.mobile_base_url), json={
            "pub": payload.public_token,
            "email": email,
            "password": password,
        })
    if done.status_code == 200:
        click.echo(f"authenticated as {email}")
        if remember:
            _remember(origin, email, password)
        return
    if done.status_code == 403:
        left = done.json().get("remaining_attempts", 0)
        raise click.ClickException(f"bad credentials ({left} attempts left)")
    raise click.ClickException("session invalid or expired")


@main.command()
@click.argument("origin", required=False)
@click.option("--all", "wipe_all", is_flag=True,
              help="Forget every remembered login.")
def logout(origin: str | None, wipe_all: bool) -> None:
    """Forget a remembered login so the next one prompts again."""
    if wipe_all:
        count = credstore.delete_all()
        click.echo(f"removed {count} remembered login(s)")
        return
    if origin is None:
        origins = credstore.list_origins()
        if not origins:
            click.echo("nothing to remove")
            return
        if len(origins) > 1:
            raise click.ClickException(
                "multiple remembered logins; pass an origin or --all: "
                + ", ".join(origins))
        origin = origins[0]
    if credstore.delete_credential(origin):
        click.echo(f"removed remembered login for {origin}")
    else:
        click.echo("nothing to remove")


if __name__ == "__main__":
    sys.exit(main())
