/** The login page's state machine, free of DOM concerns.
 *
 * One LoginSession drives one login attempt: answer the challenge, show
 * the QR with its countdown, poll for the claim.  The private token
 * lives only in this object's memory; it reaches the network solely as
 * the poll query parameter and is dropped once a terminal phase is hit.
 */

import { ApiError, BeginDoc, ChallengeDoc, LoginTransport } from "./api.js";

export type UiState =
  | { phase: "challenge" }
  | { phase: "showing_qr"; remainingS: number; qrPngUrl: string }
  | { phase: "ready"; redirect: string }
  | { phase: "expired" }
  | { phase: "error"; message: string };

export type SubmitOutcome = "accepted" | "rejected" | "failed";

export interface LoginSessionOptions {
  transport: LoginTransport;
  onState: (state: UiState) => void;
  pollIntervalMs?: number;
  maxPollFailures?: number;
}

const DEFAULT_POLL_INTERVAL_MS = 2000;
const DEFAULT_MAX_POLL_FAILURES = 5;

export class LoginSession {
  state: UiState = { phase: "challenge" };

  private readonly transport: LoginTransport;
  private readonly onState: (state: UiState) => void;
  private readonly pollIntervalMs: number;
  private readonly maxPollFailures: number;

  private pollTimer: ReturnType<typeof setTimeout> | null = null;
  private countdownTimer: ReturnType<typeof setInterval> | null = null;
  private inflight = false;
  private halted = false;
  private failures = 0;
  private remainingS = 0;
  private qrPngUrl = "";
  private privateToken: string | null = null;

  constructor(options: LoginSessionOptions) {
    this.transport = options.transport;
    this.onState = options.onState;
    this.pollIntervalMs = options.pollIntervalMs ?? DEFAULT_POLL_INTERVAL_MS;
    this.maxPollFailures = options.maxPollFailures ?? DEFAULT_MAX_POLL_FAILURES;
  }

  /** Fetch a (fresh) challenge; null means the server is unreachable. */
  async loadChallenge(): Promise<ChallengeDoc | null> {
    this.emit({ phase: "challenge" });
    try {
      return await this.transport.fetchChallenge();
    } catch {
      this.finish({ phase: "error", message: "cannot reach the login server" });
      return null;
    }
  }

  /** Submit the challenge answer; on success the poll loop starts. */
  async submitAnswer(challengeId: string, answer: string): Promise<SubmitOutcome> {
    try {
      const begun = await this.transport.beginLogin(challengeId, answer);
      this.startPolling(begun);
      return "accepted";
    } catch (err) {
      if (err instanceof ApiError && err.status === 403) {
        return "rejected"; // wrong answer; caller renders a fresh challenge
      }
      this.finish({ phase: "error", message: "cannot reach the login server" });
      return "failed";
    }
  }

  /** Permanently halt the session (page teardown, start over). */
  stop(): void {
    this.halt();
  }

  private startPolling(begun: BeginDoc): void {
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

  private emitShowingQr(): void {
    this.emit({
      phase: "showing_qr",
      remainingS: this.remainingS,
      qrPngUrl: this.qrPngUrl,
    });
  }

  private scheduleNextPoll(): void {
    if (this.halted) {
      return;
    }
    this.pollTimer = setTimeout(() => void this.poll(), this.pollIntervalMs);
  }

  private async poll(): Promise<void> {
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
    } catch {
      this.failures += 1;
      if (this.failures >= this.maxPollFailures) {
        this.finish({ phase: "error", message: "lost contact with the login server" });
        return;
      }
    } finally {
      this.inflight = false;
    }
    this.scheduleNextPoll();
  }

  private halt(): void {
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

  private finish(state: UiState): void {
    this.halt();
    this.emit(state);
  }

  private emit(state: UiState): void {
    this.state = state;
    this.onState(state);
  }
}
