/** DOM layer: renders each phase of a LoginSession into one container.
 *
 * The markup is rebuilt per state change; the page is small enough that
 * diffing would be overhead without benefit.
 */
import { makeTransport } from "./api.js";
import { LoginSession } from "./machine.js";
function el(tag, className, text = "") {
    const node = document.createElement(tag);
    node.className = className;
    if (text) {
        node.textContent = text;
    }
    return node;
}
function formatCountdown(totalS) {
    const minutes = Math.floor(totalS / 60);
    const seconds = totalS % 60;
    return `${minutes}:${String(seconds).padStart(2, "0")}`;
}
export function mountLoginPage(root) {
    let session;
    let challenge = null;
    let banner = "";
    const startOver = () => {
        session.stop();
        start();
    };
    function render(state) {
        root.textContent = "";
        switch (state.phase) {
            case "challenge":
                renderChallenge();
                break;
            case "showing_qr":
                renderQr(state.remainingS, state.qrPngUrl);
                break;
            case "ready":
                window.location.assign(state.redirect);
                break;
            case "expired":
                renderNotice("This login attempt has ended.", "Start over");
                break;
            case "error":
                renderNotice(state.message, "Retry");
                break;
        }
    }
    function renderChallenge() {
        const card = el("div", "card");
        card.appendChild(el("h1", "title", "Sign in"));
        if (banner) {
            card.appendChild(el("p", "banner", banner));
        }
        if (challenge === null) {
            card.appendChild(el("p", "hint", "Loading challenge..."));
            root.appendChild(card);
            return;
        }
        card.appendChild(el("p", "question", challenge.question));
        const form = el("form", "challenge-form");
        const input = el("input", "answer");
        input.name = "answer";
        input.autocomplete = "off";
        const button = el("button", "submit", "Continue");
        button.type = "submit";
        form.appendChild(input);
        form.appendChild(button);
        form.addEventListener("submit", (event) => {
            event.preventDefault();
            void submit(input.value);
        });
        card.appendChild(form);
        root.appendChild(card);
        input.focus();
    }
    function renderQr(remainingS, qrPngUrl) {
        const card = el("div", "card");
        card.appendChild(el("h1", "title", "Scan with your phone"));
        const image = el("img", "qr");
        image.src = qrPngUrl;
        image.alt = "Login QR code";
        card.appendChild(image);
        card.appendChild(el("p", "hint", "Scan the code with your authenticator and confirm the login there."));
        card.appendChild(el("p", "countdown", `Code expires in ${formatCountdown(remainingS)}`));
        root.appendChild(card);
    }
    function renderNotice(message, action) {
        const card = el("div", "card");
        card.appendChild(el("p", "notice", message));
        const button = el("button", "submit", action);
        button.addEventListener("click", startOver);
        card.appendChild(button);
        root.appendChild(card);
    }
    async function submit(answer) {
        if (challenge === null) {
            return;
        }
        const outcome = await session.submitAnswer(challenge.challenge_id, answer);
        if (outcome === "rejected") {
            banner = "That answer was not accepted; try this one.";
            challenge = await session.loadChallenge();
        }
    }
    function start() {
        banner = "";
        challenge = null;
        session = new LoginSession({
            transport: makeTransport(),
            onState: render,
        });
        void session.loadChallenge().then((doc) => {
            challenge = doc;
            if (doc !== null) {
                render(session.state);
            }
        });
    }
    start();
}
