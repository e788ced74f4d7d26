"""HTTP surface for terminal browsers and mobile clients.

Terminal endpoints never touch credentials; mobile endpoints never see
the private token.  Every token-failure response on the mobile side is
the same 401 document so callers cannot probe which tokens exist.
"""

from __future__ import annotations

import contextlib
import json
import secrets
import socket
import threading
import time

import uvicorn
from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from .captcha import ArithmeticProvider, CaptchaGate, FixedProvider
from .config import ServiceConfig
from .protocol import (
    AUTHENTICATED,
    BAD_CREDENTIALS,
    CaptchaFailed,
    EXPIRED,
    INVALID,
    LoginProtocol,
    PENDING,
    READY,
)
from .qr import build_payload, encode_qr, render_ascii, render_png
from .store import (
    DuplicateEmailError,
    Store,
    ValidationError,
    open_store,
)
from .tokens import hash_token, is_raw_token

TERMINAL_COOKIE = "tsid"
ACCOUNT_COOKIE = "sid"

# byte-identical body for every unauthorized outcome
_UNAUTHORIZED = b'{"error":"unauthorized"}'

_CREDENTIAL_FIELDS = ("email", "password")


def _unauthorized() -> Response:
    return Response(content=_UNAUTHORIZED, status_code=401,
                    media_type="application/json")


class TerminalSessions:
    """Server-side browser sessions binding a cookie to a public hash."""

    def __init__(self, *, clock=time.time, ttl: float = 600.0) -> None:
        self._clock = clock
        self._ttl = ttl
        self._bindings: dict[str, tuple[str, float]] = {}
        self._lock = threading.Lock()

    def bind(self, public_hash: str) -> str:
        cookie = secrets.token_hex(16)
        with self._lock:
            self._bindings[cookie] = (public_hash, self._clock())
        return cookie

    def bound_hash(self, cookie: str | None) -> str | None:
        if cookie is None:
            return None
        with self._lock:
            entry = self._bindings.get(cookie)
            if entry is None:
                return None
            return entry[0]

    def purge(self) -> None:
        cutoff = self._clock() - self._ttl
        with self._lock:
            stale = [c for c, (_, t) in self._bindings.items() if t <= cutoff]
            for cookie in stale:
                del self._bindings[cookie]


def _make_gate(config: ServiceConfig, clock) -> CaptchaGate:
    if config.captcha_provider == "fixed":
        provider = FixedProvider()
    else:
        provider = ArithmeticProvider()
    return CaptchaGate(provider, clock=clock)


async def _body_fields(request: Request) -> dict:
    try:
        body = await request.json()
    except (json.JSONDecodeError, UnicodeDecodeError):
        return {}
    return body if isinstance(body, dict) else {}


def _carries_credentials(request: Request, body: dict) -> bool:
    for field in _CREDENTIAL_FIELDS:
        if field in request.query_params or field in body:
            return True
    return False


def create_app(config: ServiceConfig, *, store: Store | None = None,
               clock=time.time) -> FastAPI:
    config.validate()
    if store is None:
        store = open_store(config.store_path, clock=clock,
                           session_ttl=config.session_ttl)
    gate = _make_gate(config, clock)
    protocol = LoginProtocol(store, gate, config.mobile_base_url,
                             ec_level=config.ec_level, clock=clock)
    terminals = TerminalSessions(clock=clock, ttl=config.session_ttl)

    stop = threading.Event()

    def sweep_loop() -> None:
        while not stop.wait(config.sweep_interval):
            protocol.expire_tick()
            terminals.purge()

    @contextlib.asynccontextmanager
    async def lifespan(_: FastAPI):
        worker = threading.Thread(target=sweep_loop, daemon=True)
        worker.start()
        yield
        stop.set()
        store.close()

    app = FastAPI(lifespan=lifespan, docs_url=None, redoc_url=None,
                  openapi_url=None)
    app.state.store = store
    app.state.protocol = protocol
    app.state.gate = gate
    app.state.terminals = terminals
    app.state.config = config

    # -- plumbing ------------------------------------------------------

    @app.get("/healthz")
    def healthz() -> PlainTextResponse:
        return PlainTextResponse("ok")

    # -- terminal channel ----------------------------------------------

    @app.get("/login/challenge")
    def login_challenge(request: Request):
        if _carries_credentials(request, {}):
            return JSONResponse({"error": "credentials not accepted"}, 400)
        challenge = gate.new_challenge()
        return {"challenge_id": challenge.id, "question": challenge.question}

    @app.post("/login/begin")
    async def login_begin(request: Request):
        body = await _body_fields(request)
        if _carries_credentials(request, body):
            return JSONResponse({"error": "credentials not accepted"}, 400)
        challenge_id = str(body.get("challenge_id", ""))
        answer = str(body.get("answer", ""))
        try:
            begun = protocol.begin_login(challenge_id, answer)
        except CaptchaFailed:
            return JSONResponse({"error": "captcha"}, 403)
        cookie = terminals.bind(hash_token(begun.payload.public_token))
        response = JSONResponse({
            "private_token": begun.private_token,
            "qr_ascii": render_ascii(begun.symbol),
            "qr_png_url": f"/login/qr.png?pub={begun.payload.public_token}",
            "expires_in_s": int(config.session_ttl),
        })
        response.set_cookie(TERMINAL_COOKIE, cookie, httponly=True,
                            samesite="strict")
        return response

    @app.get("/login/qr.png")
    def login_qr_png(request: Request):
        if _carries_credentials(request, {}):
            return JSONResponse({"error": "credentials not accepted"}, 400)
        public_token = request.query_params.get("pub", "")
        # served only while the attempt is pending
        if not is_raw_token(public_token):
            return JSONResponse({"error": "not found"}, 404)
        lookup = store.find_by_public_hash(hash_token(public_token))
        if lookup.status != "live" or lookup.row.user_id != 0:
            return JSONResponse({"error": "not found"}, 404)
        payload = build_payload(config.mobile_base_url, public_token)
        symbol = encode_qr(payload.rendered.encode(), config.ec_level)
        return Response(render_png(symbol, scale=config.qr_scale),
                        media_type="image/png")

    @app.get("/login/poll")
    def login_poll(request: Request):
        if _carries_credentials(request, {}):
            return JSONResponse({"error": "credentials not accepted"}, 400)
        private_token = request.query_params.get("priv", "")
        binding = terminals.bound_hash(request.cookies.get(TERMINAL_COOKIE))
        result = protocol.poll_claim(private_token, binding)
        if result.cross_terminal:
            return _unauthorized()
        if result.status == READY:
            response = JSONResponse({
                "status": READY,
                "user_id": result.user_id,
                "redirect": "/home",
            })
            response.set_cookie(ACCOUNT_COOKIE, result.session_token,
                                httponly=True, samesite="strict")
            return response
        return {"status": result.status}

    @app.get("/home")
    def home(request: Request):
        if _carries_credentials(request, {}):
            return JSONResponse({"error": "credentials not accepted"}, 400)
        token = request.cookies.get(ACCOUNT_COOKIE, "")
        user_id = protocol.sessions.validate(token)
        if user_id is None:
            return _unauthorized()
        return {"user_id": user_id, "message": "logged in"}

    # -- mobile channel ------------------------------------------------

    @app.get("/m/auth")
    def mobile_auth(request: Request):
        public_token = request.query_params.get("pub", "")
        if protocol.mobile_begin(public_token) != "ok":
            return _unauthorized()
        return {"form": ["email", "password"]}

    @app.post("/m/login")
    async def mobile_login(request: Request):
        body = await _body_fields(request)
        result = protocol.mobile_complete(
            str(body.get("pub", "")),
            str(body.get("email", "")),
            str(body.get("password", "")),
        )
        if result.status == AUTHENTICATED:
            return {"authenticated": True}
        if result.status == BAD_CREDENTIALS:
            return JSONResponse({
                "error": "bad_credentials",
                "remaining_attempts": result.remaining_attempts,
            }, 403)
        return _unauthorized()

    # -- maintenance ---------------------------------------------------

    @app.post("/admin/users")
    async def admin_users(request: Request):
        if not config.admin_enabled:
            return JSONResponse({"error": "not found"}, 404)
        body = await _body_fields(request)
        try:
            account = store.create_user(
                str(body.get("email", "")), str(body.get("password", "")))
        except DuplicateEmailError:
            return JSONResponse({"error": "conflict"}, 409)
        except ValidationError as exc:
            return JSONResponse({"error": str(exc)}, 400)
        return JSONResponse({"user_id": account.user_id}, 201)

    if config.ui_dir:
        app.mount("/ui", StaticFiles(directory=config.ui_dir, html=True),
                  name="ui")

    return app


class ServiceHandle:
    """A running server; stop() shuts it down and joins the thread."""

    def __init__(self, config: ServiceConfig, server: uvicorn.Server,
                 thread: threading.Thread, app: FastAPI) -> None:
        self.config = config
        self.app = app
        self._server = server
        self._thread = thread

    @property
    def base_url(self) -> str:
        return f"http://{self.config.listen_address}"

    def stop(self) -> None:
        self._server.should_exit = True
        self._thread.join(timeout=10)

    def wait(self) -> None:
        self._thread.join()


class ServeError(RuntimeError):
    pass


def serve(config: ServiceConfig, *, store: Store | None = None,
          clock=time.time) -> ServiceHandle:
    """Bind, start serving in a background thread, return the handle."""
    app = create_app(config, store=store, clock=clock)
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((config.host, config.port))
        sock.listen(128)
    except OSError as exc:
        sock.close()
        raise ServeError(
            f"cannot listen on {config.listen_address}: {exc}") from None
    server = uvicorn.Server(uvicorn.Config(app, log_level="warning",
                                           access_log=False))
    thread = threading.Thread(
        target=server.run, kwargs={"sockets": [sock]}, daemon=True)
    thread.start()
    deadline = time.monotonic() + 10
    while not server.started:
        if not thread.is_alive() or time.monotonic() > deadline:
            raise ServeError("server failed to start")
        time.sleep(0.01)
    return ServiceHandle(config, server, thread, app)
