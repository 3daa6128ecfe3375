/** Browser bootstrap: base-URL setting, a minimal create-study form, and the
 * keyboard shortcuts (1..5) for the verbal buttons. Everything below the form
 * is SessionFlow + renderScreen.
 */

import { ApiClient, ApiError, type ScaleSpec } from "./api.js";
import { SessionFlow } from "./flow.js";
import { renderScreen, type Handlers } from "./view.js";

const BASE_URL_KEY = "paircomp-base-url";

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function readScale(): ScaleSpec {
  const kind = byId<HTMLSelectElement>("scale-kind").value;
  if (kind === "saaty9") return { kind: "saaty9" };
  return {
    kind: "three_point",
    F: Number(byId<HTMLInputElement>("scale-f").value),
    G: Number(byId<HTMLInputElement>("scale-g").value),
  };
}

function readLabels(): string[] {
  return byId<HTMLTextAreaElement>("labels")
    .value.split("\n")
    .map((s) => s.trim())
    .filter((s) => s.length > 0);
}

function installKeyboard(app: HTMLElement): void {
  document.addEventListener("keydown", (e) => {
    const target = e.target as HTMLElement | null;
    if (target && ["INPUT", "TEXTAREA", "SELECT"].includes(target.tagName)) return;
    if (e.key < "1" || e.key > "5") return;
    const btn = app.querySelector<HTMLButtonElement>(
      `.choice-btn[data-key="${e.key}"], .value-btn[data-key="${e.key}"]`,
    );
    if (btn) {
      e.preventDefault();
      btn.click();
    }
  });
}

function main(): void {
  const app = byId<HTMLDivElement>("app");
  const form = byId<HTMLDivElement>("setup");
  const formError = byId<HTMLDivElement>("form-error");
  const baseInput = byId<HTMLInputElement>("base-url");
  baseInput.value =
    localStorage.getItem(BASE_URL_KEY) ?? "http://127.0.0.1:8000";

  byId<HTMLSelectElement>("scale-kind").addEventListener("change", () => {
    const threePoint = byId<HTMLSelectElement>("scale-kind").value === "three_point";
    byId<HTMLDivElement>("three-point-params").hidden = !threePoint;
  });

  installKeyboard(app);

  byId<HTMLButtonElement>("start-btn").addEventListener("click", async () => {
    formError.textContent = "";
    const labels = readLabels();
    if (labels.length < 2) {
      formError.textContent = "enter at least two objects, one per line";
      return;
    }
    const base = baseInput.value.trim();
    localStorage.setItem(BASE_URL_KEY, base);
    const api = new ApiClient(base);
    try {
      const study = await api.createStudy(labels, readScale());
      const expert = byId<HTMLInputElement>("expert").value.trim() || "anonymous";
      const session = await api.createSession(study.study_id, expert);
      const flow = new SessionFlow(api, study.study_id, session.session_id, labels);
      const handlers: Handlers = {
        choose: (i) => void flow.choose(i),
        selectCandidate: (k) => flow.selectCandidate(k),
        submitRevision: (i) => void flow.submitRevision(i),
        retry: () => void flow.retry(),
      };
      flow.onChange((s) => renderScreen(app, s, labels, handlers));
      form.hidden = true;
      await flow.start();
    } catch (e) {
      formError.textContent =
        e instanceof ApiError ? e.detail : `cannot reach the service: ${String(e)}`;
      form.hidden = false;
    }
  });
}

main();
