"""Human-verification gate that must pass before a token pair is minted.

A challenge is a short question with a hashed canonical answer.  Each
challenge is single-use: the first verification attempt consumes it,
whatever the outcome, and all failures look identical to the caller so
that unknown ids, expired challenges and wrong answers cannot be told
apart.
"""

from __future__ import annotations

import hashlib
import hmac
import secrets
import threading
import time
from dataclasses import dataclass
from typing import Callable, Protocol

DEFAULT_CHALLENGE_TTL = 300.0


def canonicalize_answer(response: str) -> str:
    """Trim whitespace and strip leading zeros from an integer answer."""
    s = response.strip()
    try:
        return str(int(s, 10))
    except ValueError:
        return s


def _answer_digest(canonical: str) -> str:
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class Challenge:
    """A single-use human-verification puzzle."""

    id: str
    question: str
    answer_hash: str
    issued_at: float
    ttl: float = DEFAULT_CHALLENGE_TTL


class ChallengeProvider(Protocol):
    def make(self, rng) -> tuple[str, str]:
        """Return (question, canonical answer)."""
        ...


class ArithmeticProvider:
    """Built-in provider: add or subtract two random two-digit integers.

    Draw order is part of the contract (tests replay it from a seeded
    rng): first operand, second operand, then the operator.
    """

    def make(self, rng) -> tuple[str, str]:
        a = rng.randint(10, 99)
        b = rng.randint(10, 99)
        op = rng.choice("+-")
        answer = a + b if op == "+" else a - b
        return f"What is {a} {op} {b}?", str(answer)


class FixedProvider:
    """Test provider with a predetermined question and answer."""

    def __init__(self, question: str = "2 + 2?", answer: str = "4"):
        self.question = question
        self.answer = answer

    def make(self, rng) -> tuple[str, str]:
        return self.question, self.answer


class CaptchaGate:
    """Issues challenges and verifies responses, consuming on any attempt.

    The live-challenge table is shared mutable state; lookup-and-consume
    happens under one lock so a challenge can never be spent twice.
    """

    def __init__(
        self,
        provider: ChallengeProvider | None = None,
        rng=None,
        clock: Callable[[], float] = time.time,
        ttl: float = DEFAULT_CHALLENGE_TTL,
    ):
        self.provider = provider if provider is not None else ArithmeticProvider()
        self.rng = rng if rng is not None else secrets.SystemRandom()
        self.clock = clock
        self.ttl = ttl
        self._live: dict[str, Challenge] = {}
        self._lock = threading.Lock()

    def _new_id(self) -> str:
        if hasattr(self.rng, "randbytes"):
            return self.rng.randbytes(16).hex()
        return secrets.token_hex(16)

    def new_challenge(self) -> Challenge:
        question, answer = self.provider.make(self.rng)
        challenge = Challenge(
            id=self._new_id(),
            question=question,
            answer_hash=_answer_digest(canonicalize_answer(answer)),
            issued_at=self.clock(),
            ttl=self.ttl,
        )
        with self._lock:
            self._live[challenge.id] = challenge
        return challenge

    def verify_challenge(self, challenge_id: str, response: str) -> bool:
        """True iff the challenge is live, unexpired, and the answer matches.

        The challenge is consumed no matter what; every failure returns
        the same bare False.
        """
        with self._lock:
            challenge = self._live.pop(challenge_id, None)
        if challenge is None:
            return False
        if self.clock() - challenge.issued_at >= challenge.ttl:
            return False
        digest = _answer_digest(canonicalize_answer(response))
        return hmac.compare_digest(digest, challenge.answer_hash)

    def live_count(self) -> int:
        with self._lock:
            return len(self._live)
