"""Service configuration: defaults < config file < environment < flags.

The file format is plain key=value lines; environment variables use the
QRAUTH_ prefix with the upper-cased key name (QRAUTH_MOBILE_BASE_URL).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields

from .qr.payload import PayloadError, validate_base_url

ENV_PREFIX = "QRAUTH_"

_BOOL_TRUE = {"1", "true", "yes", "on"}
_BOOL_FALSE = {"0", "false", "no", "off"}


class ConfigError(ValueError):
    pass


@dataclass
class ServiceConfig:
    listen_address: str = "127.0.0.1:8400"
    mobile_base_url: str = "http://127.0.0.1:8400/m/auth"
    session_ttl: float = 600.0
    sweep_interval: float = 30.0
    captcha_provider: str = "arithmetic"
    store_path: str | None = None  # None = in-memory
    admin_enabled: bool = False
    qr_scale: int = 8
    ec_level: str = "M"
    ui_dir: str | None = None

    def validate(self) -> None:
        host, _, port = self.listen_address.rpartition(":")
        if not host or not port.isdigit() or not 0 <= int(port) <= 65535:
            raise ConfigError(f"listen_address must be host:port, got"
                              f" {self.listen_address!r}")
        try:
            validate_base_url(self.mobile_base_url)
        except PayloadError as exc:
            raise ConfigError(str(exc)) from None
        if self.session_ttl <= 0:
            raise ConfigError("session_ttl must be positive")
        if self.sweep_interval <= 0:
            raise ConfigError("sweep_interval must be positive")
        if self.captcha_provider not in ("arithmetic", "fixed"):
            raise ConfigError(f"unknown captcha provider"
                              f" {self.captcha_provider!r}")
        if self.ec_level not in ("L", "M", "Q", "H"):
            raise ConfigError(f"ec_level must be one of L/M/Q/H, got"
                              f" {self.ec_level!r}")
        if self.qr_scale < 1:
            raise ConfigError("qr_scale must be >= 1")

    @property
    def host(self) -> str:
        return self.listen_address.rpartition(":")[0]

    @property
    def port(self) -> int:
        return int(self.listen_address.rpartition(":")[2])


def _parse_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            values[key.strip()] = value.strip()
    return values


def _coerce(name: str, kind: type, raw: str):
    if kind is bool:
        low = raw.lower()
        if low in _BOOL_TRUE:
            return True
        if low in _BOOL_FALSE:
            return False
        raise ConfigError(f"{name}: expected a boolean, got {raw!r}")
    try:
        if kind is float:
            return float(raw)
        if kind is int:
            return int(raw)
    except ValueError:
        raise ConfigError(f"{name}: expected a number, got {raw!r}") from None
    return raw


def load_config(path: str | None = None, env: dict | None = None,
                overrides: dict | None = None) -> ServiceConfig:
    """Merge the three sources onto the defaults and validate."""
    env = os.environ if env is None else env
    config = ServiceConfig()
    field_types = {f.name: f for f in fields(ServiceConfig)}

    def apply(name: str, raw, source: str) -> None:
        if name not in field_types:
            raise ConfigError(f"unknown configuration key {name!r} ({source})")
        if isinstance(raw, str):
            base = field_types[name].default
            kind = type(base) if base is not None else str
            raw = _coerce(name, kind, raw)
        setattr(config, name, raw)

    if path is not None:
        for key, value in _parse_file(path).items():
            apply(key, value, path)
    for field in field_types:
        env_key = ENV_PREFIX + field.upper()
        if env_key in env:
            apply(field, env[env_key], env_key)
    if overrides:
        for key, value in overrides.items():
            if value is not None:
                apply(key, value, "command line")
    config.validate()
    return config
