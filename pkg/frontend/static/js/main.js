import { mountLoginPage } from "./page.js";
const root = document.getElementById("app");
if (root === null) {
    throw new Error("login page container #app is missing");
}
mountLoginPage(root);
