/** Typed access to the login service's documented endpoints.
 *
 * All traffic from the page funnels through one transport, so tests can
 * record it and the page code cannot grow extra requests unnoticed.
 */
export class ApiError extends Error {
    constructor(status, message) {
        super(message);
        this.status = status;
    }
}
const defaultFetch = (input, init) => globalThis.fetch(input, init);
export function makeTransport(fetchImpl = defaultFetch, baseUrl = "") {
    async function getJson(url) {
        const response = await fetchImpl(baseUrl + url);
        if (!response.ok) {
            throw new ApiError(response.status, `GET ${url} failed (${response.status})`);
        }
        return response.json();
    }
    return {
        async fetchChallenge() {
            return (await getJson("/login/challenge"));
        },
        async beginLogin(challengeId, answer) {
            const response = await fetchImpl(baseUrl + "/login/begin", {
                method: "POST",
                headers: { "content-type": "application/json" },
                body: JSON.stringify({ challenge_id: challengeId, answer }),
            });
            if (!response.ok) {
                throw new ApiError(response.status, `begin failed (${response.status})`);
            }
            return (await response.json());
        },
        async pollOnce(privateToken) {
            const query = encodeURIComponent(privateToken);
            return (await getJson(`/login/poll?priv=${query}`));
        },
    };
}
