import pytest

from conftest import TEST_PBKDF2_ITERATIONS, FakeClock
from qrauth.captcha import CaptchaGate, FixedProvider
from qrauth.protocol import (
    AUTHENTICATED,
    BAD_CREDENTIALS,
    EXPIRED,
    EXPIRED_TOKEN,
    INVALID,
    INVALID_TOKEN,
    OK,
    PENDING,
    READY,
    REUSED_TOKEN,
    AccountSessions,
    CaptchaFailed,
    LoginProtocol,
)
from qrauth.qr import decode_qr, parse_payload
from qrauth.store import MemoryStore
from qrauth.tokens import hash_token

BASE_URL = "http://mob.test/m/auth"


@pytest.fixture
def protocol(clock):
    store = MemoryStore(clock=clock, pbkdf2_iterations=TEST_PBKDF2_ITERATIONS)
    store.create_user("user@example.test", "hunter2222")
    gate = CaptchaGate(provider=FixedProvider(), clock=clock)
    return LoginProtocol(store, gate, BASE_URL, clock=clock)


def begin(protocol):
    challenge = protocol._gate.new_challenge()
    return protocol.begin_login(challenge.id, "4")


def public_of(result):
    return result.payload.public_token


# ---- begin ----

def test_begin_requires_captcha(protocol):
    challenge = protocol._gate.new_challenge()
    with pytest.raises(CaptchaFailed):
        protocol.begin_login(challenge.id, "5")
    assert protocol.store.dump_rows() == []


def test_begin_mints_row_and_payload(protocol):
    result = begin(protocol)
    rows = protocol.store.dump_rows()
    assert len(rows) == 1
    assert rows[0].public_hash == hash_token(public_of(result))
    assert rows[0].private_hash == hash_token(result.private_token)
    assert result.payload.rendered == BASE_URL + "?pub=" + public_of(result)


def test_private_token_never_leaves_the_terminal_channel(protocol):
    result = begin(protocol)
    assert result.private_token not in result.payload.rendered
    decoded = decode_qr(result.symbol).decode()
    assert result.private_token not in decoded
    # the symbol carries exactly the payload, which carries only the public token
    assert parse_payload(decoded).public_token == public_of(result)


def test_each_attempt_gets_fresh_tokens(protocol):
    a = begin(protocol)
    b = begin(protocol)
    assert public_of(a) != public_of(b)
    assert a.private_token != b.private_token


# ---- mobile channel ----

def test_mobile_begin_vocabulary(protocol, clock):
    result = begin(protocol)
    assert protocol.mobile_begin(public_of(result)) == OK
    assert protocol.mobile_begin("!" * 10) == INVALID_TOKEN
    assert protocol.mobile_begin("AAAAAAAAAA") == INVALID_TOKEN
    clock.advance(601)
    assert protocol.mobile_begin(public_of(result)) == EXPIRED_TOKEN


def test_mobile_begin_after_authentication(protocol):
    result = begin(protocol)
    protocol.mobile_complete(public_of(result), "user@example.test", "hunter2222")
    assert protocol.mobile_begin(public_of(result)) == REUSED_TOKEN


def test_mobile_complete_happy_path(protocol):
    result = begin(protocol)
    outcome = protocol.mobile_complete(
        public_of(result), "user@example.test", "hunter2222")
    assert outcome.status == AUTHENTICATED
    assert outcome.user_id == 1


def test_mobile_complete_wrong_password_counts_down(protocol):
    result = begin(protocol)
    for expected in (4, 3, 2, 1):
        outcome = protocol.mobile_complete(
            public_of(result), "user@example.test", "wrong")
        assert outcome.status == BAD_CREDENTIALS
        assert outcome.remaining_attempts == expected
    outcome = protocol.mobile_complete(
        public_of(result), "user@example.test", "wrong")
    assert outcome.status == BAD_CREDENTIALS
    assert outcome.remaining_attempts == 0
    # the failure cap destroyed the attempt; even the right password is too late
    outcome = protocol.mobile_complete(
        public_of(result), "user@example.test", "hunter2222")
    assert outcome.status == INVALID_TOKEN


def test_mobile_complete_unknown_email_burns_an_attempt(protocol):
    result = begin(protocol)
    outcome = protocol.mobile_complete(
        public_of(result), "ghost@example.test", "hunter2222")
    assert outcome.status == BAD_CREDENTIALS
    assert outcome.remaining_attempts == 4


def test_mobile_complete_double_submit(protocol):
    result = begin(protocol)
    protocol.mobile_complete(public_of(result), "user@example.test", "hunter2222")
    again = protocol.mobile_complete(
        public_of(result), "user@example.test", "hunter2222")
    assert again.status == REUSED_TOKEN


def test_mobile_complete_expired(protocol, clock):
    result = begin(protocol)
    clock.advance(601)
    outcome = protocol.mobile_complete(
        public_of(result), "user@example.test", "hunter2222")
    assert outcome.status == EXPIRED_TOKEN


# ---- terminal poll ----

def bound_hash(result):
    return hash_token(public_of(result))


def test_poll_pending_until_mobile_completes(protocol):
    result = begin(protocol)
    assert protocol.poll_claim(result.private_token, bound_hash(result)).status == PENDING
    protocol.mobile_complete(public_of(result), "user@example.test", "hunter2222")
    outcome = protocol.poll_claim(result.private_token, bound_hash(result))
    assert outcome.status == READY
    assert outcome.user_id == 1
    assert outcome.session_token


def test_poll_ready_is_one_shot(protocol):
    result = begin(protocol)
    protocol.mobile_complete(public_of(result), "user@example.test", "hunter2222")
    first = protocol.poll_claim(result.private_token, bound_hash(result))
    second = protocol.poll_claim(result.private_token, bound_hash(result))
    assert first.status == READY
    assert second.status == INVALID


def test_poll_rejects_public_token(protocol):
    result = begin(protocol)
    # the QR-visible token must never work as a claim credential
    outcome = protocol.poll_claim(public_of(result), bound_hash(result))
    assert outcome.status == INVALID


def test_poll_malformed_and_unknown(protocol):
    assert protocol.poll_claim("short", None).status == INVALID
    assert protocol.poll_claim("AAAAAAAAAA", None).status == INVALID


def test_poll_expired(protocol, clock):
    result = begin(protocol)
    clock.advance(601)
    assert protocol.poll_claim(result.private_token, bound_hash(result)).status == EXPIRED


def test_poll_cross_terminal_binding(protocol):
    ours = begin(protocol)
    theirs = begin(protocol)
    # our terminal's binding, their private token
    outcome = protocol.poll_claim(theirs.private_token, bound_hash(ours))
    assert outcome.status == INVALID
    assert outcome.cross_terminal is True
    # the attempt itself is unharmed
    assert protocol.poll_claim(theirs.private_token, bound_hash(theirs)).status == PENDING


def test_poll_without_binding_is_cross_terminal(protocol):
    result = begin(protocol)
    outcome = protocol.poll_claim(result.private_token, None)
    assert outcome.status == INVALID
    assert outcome.cross_terminal is True


# ---- session tokens and sweeping ----

def test_account_session_round_trip(clock):
    sessions = AccountSessions(clock=clock)
    token = sessions.issue(42)
    assert sessions.validate(token) == 42
    assert sessions.validate("junk") is None
    clock.advance(24 * 3600)
    assert sessions.validate(token) is None


def test_session_tokens_are_unique(clock):
    sessions = AccountSessions(clock=clock)
    tokens = {sessions.issue(1) for _ in range(100)}
    assert len(tokens) == 100


def test_expire_tick_counts(protocol, clock):
    begin(protocol)
    begin(protocol)
    clock.advance(300)
    begin(protocol)
    assert protocol.expire_tick() == 0
    clock.advance(300)
    assert protocol.expire_tick() == 2
    assert protocol.expire_tick() == 0
    clock.advance(300)
    assert protocol.expire_tick() == 1
