import pytest

from qrauth.config import ConfigError, ServiceConfig, load_config


def write_config(tmp_path, text):
    path = tmp_path / "qrauth.conf"
    path.write_text(text)
    return str(path)


def test_defaults():
    config = load_config(env={})
    assert config.listen_address == "127.0.0.1:8400"
    assert config.mobile_base_url == "http://127.0.0.1:8400/m/auth"
    assert config.session_ttl == 600.0
    assert config.store_path is None
    assert config.admin_enabled is False


def test_host_port_split():
    config = ServiceConfig(listen_address="0.0.0.0:9000")
    assert config.host == "0.0.0.0"
    assert config.port == 9000


def test_file_values(tmp_path):
    path = write_config(tmp_path, """
# comment line

listen_address = 127.0.0.1:9100
session_ttl = 120
admin_enabled = yes
store_path = /tmp/auth.db
""")
    config = load_config(path, env={})
    assert config.listen_address == "127.0.0.1:9100"
    assert config.session_ttl == 120.0
    assert config.admin_enabled is True
    assert config.store_path == "/tmp/auth.db"


def test_file_rejects_bare_words(tmp_path):
    path = write_config(tmp_path, "listen_address\n")
    with pytest.raises(ConfigError, match="expected key=value"):
        load_config(path, env={})


def test_file_rejects_unknown_keys(tmp_path):
    path = write_config(tmp_path, "listen_adress = 1.2.3.4:80\n")
    with pytest.raises(ConfigError, match="unknown configuration key"):
        load_config(path, env={})


def test_env_overrides_file(tmp_path):
    path = write_config(tmp_path, "session_ttl = 120\n")
    config = load_config(path, env={"QRAUTH_SESSION_TTL": "240"})
    assert config.session_ttl == 240.0


def test_cli_overrides_env(tmp_path):
    path = write_config(tmp_path, "listen_address = 127.0.0.1:1111\n")
    config = load_config(
        path,
        env={"QRAUTH_LISTEN_ADDRESS": "127.0.0.1:2222"},
        overrides={"listen_address": "127.0.0.1:3333"})
    assert config.listen_address == "127.0.0.1:3333"


def test_none_valued_overrides_are_skipped():
    config = load_config(env={}, overrides={"listen_address": None})
    assert config.listen_address == "127.0.0.1:8400"


def test_bool_coercion_vocabulary():
    for raw, expected in (("1", True), ("true", True), ("on", True),
                          ("0", False), ("no", False), ("off", False)):
        config = load_config(env={"QRAUTH_ADMIN_ENABLED": raw})
        assert config.admin_enabled is expected
    with pytest.raises(ConfigError, match="expected a boolean"):
        load_config(env={"QRAUTH_ADMIN_ENABLED": "maybe"})


def test_numeric_coercion_errors():
    with pytest.raises(ConfigError, match="expected a number"):
        load_config(env={"QRAUTH_SESSION_TTL": "soon"})


@pytest.mark.parametrize("field,value,message", [
    ("listen_address", "no-port-here", "host:port"),
    ("listen_address", "host:99999", "host:port"),
    ("mobile_base_url", "/m/auth", "absolute"),
    ("mobile_base_url", "http://x/m?y=1", "query"),
    ("session_ttl", "0", "positive"),
    ("sweep_interval", "-5", "positive"),
    ("captcha_provider", "turing", "captcha provider"),
    ("ec_level", "X", "L/M/Q/H"),
    ("qr_scale", "0", ">= 1"),
])
def test_validation_errors(field, value, message):
    with pytest.raises(ConfigError, match=message):
        load_config(env={"QRAUTH_" + field.upper(): value})
