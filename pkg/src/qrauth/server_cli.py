"""The `qrauth-server` command: run the service or dump the auth table."""

from __future__ import annotations

import sys

import click

from .config import ConfigError, load_config
from .service import ServeError, serve
from .store import open_store


def _build_config(config_path, listen, mobile_base_url, store_path):
    overrides = {
        "listen_address": listen,
        "mobile_base_url": mobile_base_url,
        "store_path": store_path,
    }
    return load_config(config_path, overrides=overrides)


@click.group()
def main() -> None:
    """Cross-device QR login service."""


@main.command()
@click.option("--listen", default=None, help="host:port to listen on.")
@click.option("--mobile-base-url", default=None,
              help="Absolute URL placed in QR payloads.")
@click.option("--store", "store_path", default=None,
              help="Database file path (default: in-memory).")
@click.option("--config", "config_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="key=value configuration file.")
def run(listen, mobile_base_url, store_path, config_path) -> None:
    """Start the login service and block until interrupted."""
    try:
        config = _build_config(config_path, listen, mobile_base_url, store_path)
        handle = serve(config)
    except (ConfigError, ServeError) as exc:
        raise click.ClickException(str(exc)) from None
    click.echo(f"listening on {handle.base_url}")
    click.echo(f"mobile base URL: {config.mobile_base_url}")
    try:
        handle.wait()
    except KeyboardInterrupt:
        handle.stop()


@main.command()
@click.option("--store", "store_path", required=True,
              help="Database file path to inspect.")
def dump(store_path) -> None:
    """Print auth rows as line-delimited records for debugging."""
    store = open_store(store_path)
    try:
        rows = store.dump_rows()
        now = store.now()
        for row in rows:
            state = "pending" if row.user_id == 0 else "authenticated"
            if now - row.created_at >= store.session_ttl:
                state = "expired"
            click.echo(
                f"public={row.public_hash} private={row.private_hash}"
                f" user_id={row.user_id} verified={int(row.verified)}"
                f" state={state} age_s={now - row.created_at:.0f}"
                f" failures={row.failed_attempts}"
            )
        click.echo(f"{len(rows)} row(s)", err=True)
    finally:
        store.close()


if __name__ == "__main__":
    sys.exit(main())
