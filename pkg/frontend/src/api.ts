/** Typed access to the login service's documented endpoints.
 *
 * All traffic from the page funnels through one transport, so tests can
 * record it and the page code cannot grow extra requests unnoticed.
 */

export interface ChallengeDoc {
  challenge_id: string;
  question: string;
}

export interface BeginDoc {
  private_token: string;
  qr_ascii: string;
  qr_png_url: string;
  expires_in_s: number;
}

export type PollStatus = "pending" | "ready" | "expired" | "invalid";

export interface PollDoc {
  status: PollStatus;
  user_id?: number;
  redirect?: string;
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export interface LoginTransport {
  fetchChallenge(): Promise<ChallengeDoc>;
  beginLogin(challengeId: string, answer: string): Promise<BeginDoc>;
  pollOnce(privateToken: string): Promise<PollDoc>;
}

const defaultFetch: FetchLike = (input, init) => globalThis.fetch(input, init);

export function makeTransport(
  fetchImpl: FetchLike = defaultFetch,
  baseUrl = "",
): LoginTransport {
  async function getJson(url: string): Promise<unknown> {
    const response = await fetchImpl(baseUrl + url);
    if (!response.ok) {
      throw new ApiError(response.status, `GET ${url} failed (${response.status})`);
    }
    return response.json();
  }

  return {
    async fetchChallenge(): Promise<ChallengeDoc> {
      return (await getJson("/login/challenge")) as ChallengeDoc;
    },

    async beginLogin(challengeId: string, answer: string): Promise<BeginDoc> {
      const response = await fetchImpl(baseUrl + "/login/begin", {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ challenge_id: challengeId, answer }),
      });
      if (!response.ok) {
        throw new ApiError(response.status, `begin failed (${response.status})`);
      }
      return (await response.json()) as BeginDoc;
    },

    async pollOnce(privateToken: string): Promise<PollDoc> {
      const query = encodeURIComponent(privateToken);
      return (await getJson(`/login/poll?priv=${query}`)) as PollDoc;
    },
  };
}
