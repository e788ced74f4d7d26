import socket
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qrauth.store import MemoryStore, SqliteStore

# keep the slow hash cheap in tests; production default is 100k iterations
TEST_PBKDF2_ITERATIONS = 200


class FakeClock:
    """Injectable time source; tests advance it explicitly."""

    def __init__(self, start: float = 1_000_000.0) -> None:
        self.t = float(start)

    def __call__(self) -> float:
        return self.t

    def advance(self, seconds: float) -> None:
        self.t += seconds


@pytest.fixture
def clock() -> FakeClock:
    return FakeClock()


@pytest.fixture(params=["memory", "sqlite"])
def store(request, clock, tmp_path):
    if request.param == "memory":
        backend = MemoryStore(clock=clock,
                              pbkdf2_iterations=TEST_PBKDF2_ITERATIONS)
    else:
        backend = SqliteStore(str(tmp_path / "auth.db"), clock=clock,
                              pbkdf2_iterations=TEST_PBKDF2_ITERATIONS)
    yield backend
    backend.close()


@pytest.fixture
def mem_store(clock):
    backend = MemoryStore(clock=clock,
                          pbkdf2_iterations=TEST_PBKDF2_ITERATIONS)
    yield backend
    backend.close()


def free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


@pytest.fixture
def report(capsys):
    """Print one visible PASS/FAIL line per acceptance criterion."""

    def _report(name: str, ok: bool) -> None:
        with capsys.disabled():
            print(f"{'PASS' if ok else 'FAIL'}: {name}")
        assert ok, name

    return _report
