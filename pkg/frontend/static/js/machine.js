/** The login page's state machine, free of DOM concerns.
 *
 * One LoginSession drives one login attempt: answer the challenge, show
 * the QR with its countdown, poll for the claim.  The private token
 * lives only in this object's memory; it reaches the network solely as
 * the poll query parameter and is dropped once a terminal phase is hit.
 */
import { ApiError } from "./api.js";
const DEFAULT_POLL_INTERVAL_MS = 2000;
const DEFAULT_MAX_POLL_FAILURES = 5;
export class LoginSession {
    constructor(options) {
        this.state = { phase: "challenge" };
        this.pollTimer = null;
        this.countdownTimer = null;
        this.inflight = false;
        this.halted = false;
        this.failures = 0;
        this.remainingS = 0;
        this.qrPngUrl = "";
        this.privateToken = null;
        this.transport = options.transport;
        this.onState = options.onState;
        this.pollIntervalMs = options.pollIntervalMs ?? DEFAULT_POLL_INTERVAL_MS;
        this.maxPollFailures = options.maxPollFailures ?? DEFAULT_MAX_POLL_FAILURES;
    }
    /** Fetch a (fresh) challenge; null means the server is unreachable. */
    async loadChallenge() {
        this.emit({ phase: "challenge" });
        try {
            return await this.transport.fetchChallenge();
        }
        catch {
            this.finish({ phase: "error", message: "cannot reach the login server" });
            return null;
        }
    }
    /** Submit the challenge answer; on success the poll loop starts. */
    async submitAnswer(challengeId, answer) {
        try {
            const begun = await this.transport.beginLogin(challengeId, answer);
            this.startPolling(begun);
            return "accepted";
        }
        catch (err) {
            if (err instanceof ApiError && err.status === 403) {
                return "rejected"; // wrong answer; caller renders a fresh challenge
            }
            this.finish({ phase: "error", message: "cannot reach the login server" });
            return "failed";
        }
    }
    /** Permanently halt the session (page teardown, start over). */
    stop() {
        this.halt();
    }
    startPolling(begun) {
        this.privateToken = begun.private_token;
        this.remainingS = begun.expires_in_s;
        this.qrPngUrl = begun.qr_png_url;
        this.emitShowingQr();
        this.countdownTimer = setInterval(() => {
            this.remainingS = Math.max(0, this.remainingS - 1);
            if (!this.halted) {
                this.emitShowingQr();
            }
        }, 1000);
        this.scheduleNextPoll();
    }
    emitShowingQr() {
        this.emit({
            phase: "showing_qr",
            remainingS: this.remainingS,
            qrPngUrl: this.qrPngUrl,
        });
    }
    scheduleNextPoll() {
        if (this.halted) {
            return;
        }
        this.pollTimer = setTimeout(() => void this.poll(), this.pollIntervalMs);
    }
    async poll() {
        if (this.halted || this.inflight || this.privateToken === null) {
            return;
        }
        this.inflight = true;
        try {
            const doc = await this.transport.pollOnce(this.privateToken);
            this.failures = 0;
            if (doc.status === "ready") {
                this.finish({ phase: "ready", redirect: doc.redirect ?? "/home" });
                return;
            }
            if (doc.status === "expired" || doc.status === "invalid") {
                // either way this attempt is dead; the user must start over
                this.finish({ phase: "expired" });
                return;
            }
        }
        catch {
            this.failures += 1;
            if (this.failures >= this.maxPollFailures) {
                this.finish({ phase: "error", message: "lost contact with the login server" });
                return;
            }
        }
        finally {
            this.inflight = false;
        }
        this.scheduleNextPoll();
    }
    halt() {
        this.halted = true;
        this.privateToken = null;
        if (this.pollTimer !== null) {
            clearTimeout(this.pollTimer);
            this.pollTimer = null;
        }
        if (this.countdownTimer !== null) {
            clearInterval(this.countdownTimer);
            this.countdownTimer = null;
        }
    }
    finish(state) {
        this.halt();
        this.emit(state);
    }
    emit(state) {
        this.state = state;
        this.onState(state);
    }
}
