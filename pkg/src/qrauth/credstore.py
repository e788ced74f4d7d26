"""Remembered mobile logins, encrypted at rest.

One JSON file keyed by server origin.  Each entry's password is sealed
with a key derived from the user's passphrase (per-entry salt), so the
file is useless without it; a wrong passphrase fails cleanly and never
produces plaintext.
"""

from __future__ import annotations

import base64
import json
import os
import time
from pathlib import Path

from cryptography.fernet import Fernet, InvalidToken
from cryptography.hazmat.primitives import hashes
from cryptography.hazmat.primitives.kdf.pbkdf2 import PBKDF2HMAC

FILE_VERSION = 1
KDF_ITERATIONS = 200_000

PATH_ENV = "QRAUTH_CREDENTIALS_PATH"


class CredStoreError(Exception):
    pass


class WrongPassphraseError(CredStoreError):
    pass


def default_path() -> Path:
    override = os.environ.get(PATH_ENV)
    if override:
        return Path(override)
    base = os.environ.get("XDG_CONFIG_HOME") or os.path.join(
        os.path.expanduser("~"), ".config")
    return Path(base) / "qrauth" / "credentials.json"


def _derive_key(passphrase: str, salt: bytes) -> bytes:
    kdf = PBKDF2HMAC(algorithm=hashes.SHA256(), length=32, salt=salt,
                     iterations=KDF_ITERATIONS)
    return base64.urlsafe_b64encode(kdf.derive(passphrase.encode()))


def _load_file(path: Path) -> dict:
    if not path.exists():
        return {"version": FILE_VERSION, "entries": {}}
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CredStoreError(f"cannot read credential file: {exc}") from None
    if data.get("version") != FILE_VERSION:
        raise CredStoreError(
            f"unsupported credential file version {data.get('version')!r}")
    return data


def _write_file(path: Path, data: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
    os.replace(tmp, path)
    os.chmod(path, 0o600)


def save_credential(origin: str, email: str, password: str, passphrase: str,
                    path: Path | None = None) -> None:
    path = path or default_path()
    data = _load_file(path)
    salt = os.urandom(16)
    sealed = Fernet(_derive_key(passphrase, salt)).encrypt(password.encode())
    data["entries"][origin] = {
        "email": email,
        "salt": salt.hex(),
        "password_ciphertext": sealed.decode(),
        "created_at": time.time(),
    }
    _write_file(path, data)


def stored_email(origin: str, path: Path | None = None) -> str | None:
    """The remembered email for an origin, or None; needs no passphrase."""
    path = path or default_path()
    entry = _load_file(path)["entries"].get(origin)
    return None if entry is None else entry["email"]


def load_credential(origin: str, passphrase: str,
                    path: Path | None = None) -> tuple[str, str]:
    path = path or default_path()
    entry = _load_file(path)["entries"].get(origin)
    if entry is None:
        raise CredStoreError(f"no remembered login for {origin}")
    key = _derive_key(passphrase, bytes.fromhex(entry["salt"]))
    try:
        password = Fernet(key).decrypt(entry["password_ciphertext"].encode())
    except InvalidToken:
        raise WrongPassphraseError("wrong passphrase") from None
    return entry["email"], password.decode()


def delete_credential(origin: str, path: Path | None = None) -> bool:
    path = path or default_path()
    data = _load_file(path)
    if origin not in data["entries"]:
        return False
    del data["entries"][origin]
    _write_file(path, data)
    return True


def delete_all(path: Path | None = None) -> int:
    path = path or default_path()
    data = _load_file(path)
    count = len(data["entries"])
    if count:
        data["entries"] = {}
        _write_file(path, data)
    return count


def list_origins(path: Path | None = None) -> list[str]:
    path = path or default_path()
    return sorted(_load_file(path)["entries"])
