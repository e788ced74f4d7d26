import json

import pytest

from qrauth import credstore

ORIGIN = "http://auth.test"


@pytest.fixture
def path(tmp_path):
    return tmp_path / "credentials.json"


def test_round_trip(path):
    credstore.save_credential(ORIGIN, "a@b.test", "s3cretpass", "phrase", path)
    assert credstore.load_credential(ORIGIN, "phrase", path) == (
        "a@b.test", "s3cretpass")


def test_stored_email_needs_no_passphrase(path):
    credstore.save_credential(ORIGIN, "a@b.test", "s3cretpass", "phrase", path)
    assert credstore.stored_email(ORIGIN, path) == "a@b.test"
    assert credstore.stored_email("http://other.test", path) is None


def test_wrong_passphrase_fails_cleanly(path):
    credstore.save_credential(ORIGIN, "a@b.test", "s3cretpass", "phrase", path)
    with pytest.raises(credstore.WrongPassphraseError):
        credstore.load_credential(ORIGIN, "not-the-phrase", path)


def test_missing_entry(path):
    with pytest.raises(credstore.CredStoreError, match="no remembered login"):
        credstore.load_credential(ORIGIN, "phrase", path)


def test_password_is_not_on_disk(path):
    credstore.save_credential(ORIGIN, "a@b.test", "s3cretpass", "phrase", path)
    blob = path.read_bytes()
    assert b"s3cretpass" not in blob
    assert b"phrase" not in blob
    assert b"a@b.test" in blob  # email is lookup metadata, not a secret


def test_file_permissions(path):
    credstore.save_credential(ORIGIN, "a@b.test", "s3cretpass", "phrase", path)
    assert path.stat().st_mode & 0o777 == 0o600


def test_overwrite_replaces_entry(path):
    credstore.save_credential(ORIGIN, "a@b.test", "oldpass", "phrase", path)
    credstore.save_credential(ORIGIN, "a@b.test", "newpass", "phrase", path)
    assert credstore.load_credential(ORIGIN, "phrase", path)[1] == "newpass"


def test_entries_are_independent(path):
    credstore.save_credential(ORIGIN, "a@b.test", "pass-one", "phrase-1", path)
    credstore.save_credential("http://two.test", "c@d.test", "pass-two",
                              "phrase-2", path)
    assert credstore.load_credential(ORIGIN, "phrase-1", path)[1] == "pass-one"
    assert credstore.load_credential("http://two.test", "phrase-2",
                                     path)[1] == "pass-two"
    with pytest.raises(credstore.WrongPassphraseError):
        credstore.load_credential("http://two.test", "phrase-1", path)


def test_delete_credential(path):
    credstore.save_credential(ORIGIN, "a@b.test", "s3cretpass", "phrase", path)
    assert credstore.delete_credential(ORIGIN, path) is True
    assert credstore.delete_credential(ORIGIN, path) is False
    assert credstore.stored_email(ORIGIN, path) is None


def test_delete_all(path):
    credstore.save_credential(ORIGIN, "a@b.test", "x-password", "p", path)
    credstore.save_credential("http://two.test", "c@d.test", "y-password",
                              "p", path)
    assert credstore.delete_all(path) == 2
    assert credstore.delete_all(path) == 0
    assert credstore.list_origins(path) == []


def test_list_origins_sorted(path):
    credstore.save_credential("http://bbb.test", "a@b.test", "pw111111", "p",
                              path)
    credstore.save_credential("http://aaa.test", "a@b.test", "pw222222", "p",
                              path)
    assert credstore.list_origins(path) == ["http://aaa.test",
                                            "http://bbb.test"]


def test_unsupported_version_rejected(path):
    path.write_text(json.dumps({"version": 99, "entries": {}}))
    with pytest.raises(credstore.CredStoreError, match="version"):
        credstore.stored_email(ORIGIN, path)


def test_corrupt_file_rejected(path):
    path.write_text("{not json")
    with pytest.raises(credstore.CredStoreError, match="cannot read"):
        credstore.stored_email(ORIGIN, path)


def test_default_path_env_override(monkeypatch, tmp_path):
    target = tmp_path / "elsewhere.json"
    monkeypatch.setenv(credstore.PATH_ENV, str(target))
    assert credstore.default_path() == target
    monkeypatch.delenv(credstore.PATH_ENV)
    monkeypatch.setenv("XDG_CONFIG_HOME", str(tmp_path / "xdg"))
    assert credstore.default_path() == (
        tmp_path / "xdg" / "qrauth" / "credentials.json")
