/** DOM renderer: maps a Screen to elements. No state of its own beyond the
 * live verbal readout next to the slider; every re-render rebuilds the root.
 *
 * Works against any Document (the browser's or a test DOM), so all elements
 * are created through root.ownerDocument.
 */

import type { AggregatePayload, Choice, Progress, ResultsPayload } from "./api.js";
import type { ConflictScreen, ChoosingScreen, Screen } from "./flow.js";

export interface Handlers {
  choose(index: number): void;
  selectCandidate(k: number): void;
  submitRevision(index: number): void;
  retry(): void;
}

const WEIGHT_DECIMALS = 4;

export function renderScreen(
  root: HTMLElement,
  screen: Screen,
  labels: string[],
  handlers: Handlers,
): void {
  const doc = root.ownerDocument;
  root.textContent = "";
  switch (screen.kind) {
    case "loading":
      root.appendChild(el(doc, "div", "loading", "loading..."));
      return;
    case "retry": {
      const banner = el(doc, "div", "retry-banner");
      banner.appendChild(el(doc, "span", "retry-message", screen.message));
      const btn = el(doc, "button", "retry-btn", "retry") as HTMLButtonElement;
      btn.addEventListener("click", () => handlers.retry());
      banner.appendChild(btn);
      root.appendChild(banner);
      return;
    }
    case "choosing":
      root.appendChild(renderChoosing(doc, screen, handlers));
      return;
    case "conflict":
      root.appendChild(renderConflict(doc, screen, handlers));
      return;
    case "finished": {
      const done = el(doc, "div", "finished");
      done.appendChild(el(doc, "h2", "finished-title", "session complete"));
      done.appendChild(renderProgress(doc, screen.progress));
      done.appendChild(renderResultsCard(doc, labels, screen.results));
      if (screen.aggregate && screen.aggregate.k >= 2) {
        done.appendChild(renderAggregateCard(doc, labels, screen.aggregate));
      }
      root.appendChild(done);
      return;
    }
  }
}

function renderChoosing(
  doc: Document,
  screen: ChoosingScreen,
  handlers: Handlers,
): HTMLElement {
  const pane = el(doc, "div", "choosing");
  const p = screen.pair;
  pane.appendChild(
    el(doc, "h2", "pair-title", `${p.label_i} compared with ${p.label_j}`),
  );
  pane.appendChild(
    el(
      doc,
      "p",
      "pair-question",
      `How important is "${p.label_i}" relative to "${p.label_j}"?`,
    ),
  );
  pane.appendChild(renderProgress(doc, p.progress));
  pane.appendChild(
    renderValuePicker(doc, p.choices, "choice-btn", (idx) => handlers.choose(idx)),
  );
  if (screen.inlineError) {
    pane.appendChild(el(doc, "div", "inline-error", screen.inlineError));
  }
  return pane;
}

function renderConflict(
  doc: Document,
  screen: ConflictScreen,
  handlers: Handlers,
): HTMLElement {
  const pane = el(doc, "div", "conflict-dialog");
  pane.appendChild(
    el(doc, "h2", "conflict-title", "that answer conflicts with earlier ones"),
  );
  pane.appendChild(
    el(
      doc,
      "p",
      "pending-note",
      `your answer "${screen.pendingVerbal}" is on hold`,
    ),
  );
  const list = el(doc, "ul", "triad-list");
  for (const s of screen.sentences) {
    list.appendChild(el(doc, "li", "triad-sentence", s));
  }
  pane.appendChild(list);
  pane.appendChild(
    el(
      doc,
      "p",
      "admissible-hint",
      `consistent answers for the current pair: ${screen.admissible.join(", ")}`,
    ),
  );
  if (screen.stalled) {
    pane.appendChild(
      el(
        doc,
        "div",
        "stall-note",
        "several attempts in a row were rejected; consider one of the offered revisions",
      ),
    );
  }
  pane.appendChild(el(doc, "p", "candidate-prompt", "revise one of these pairs:"));
  const row = el(doc, "div", "candidate-row");
  screen.candidates.forEach((c, k) => {
    const btn = el(
      doc,
      "button",
      "revision-btn",
      `${c.labelI} vs ${c.labelJ}`,
    ) as HTMLButtonElement;
    if (k === screen.selected) btn.classList.add("selected");
    btn.addEventListener("click", () => handlers.selectCandidate(k));
    row.appendChild(btn);
  });
  pane.appendChild(row);
  if (screen.selected !== null) {
    const cand = screen.candidates[screen.selected];
    const values = el(doc, "div", "revision-values");
    values.appendChild(
      el(
        doc,
        "p",
        "revision-prompt",
        `new answer for "${cand.labelI}" relative to "${cand.labelJ}":`,
      ),
    );
    values.appendChild(
      renderValuePicker(doc, screen.menu, "value-btn", (idx) =>
        handlers.submitRevision(idx),
      ),
    );
    pane.appendChild(values);
  }
  pane.appendChild(renderProgress(doc, screen.progress));
  if (screen.inlineError) {
    pane.appendChild(el(doc, "div", "inline-error", screen.inlineError));
  }
  return pane;
}

/** Verbal buttons for small menus (keyboard keys 1..5), a slider otherwise.
 * Numeric values stay behind a details toggle in both shapes; whatever gets
 * submitted is always an index into the server-provided menu.
 */
function renderValuePicker(
  doc: Document,
  menu: Choice[],
  btnClass: string,
  submit: (index: number) => void,
): HTMLElement {
  const holder = el(doc, "div", "value-picker");
  if (menu.length <= 5) {
    const row = el(doc, "div", "choice-row");
    menu.forEach((c, idx) => {
      const btn = el(doc, "button", btnClass, c.verbal) as HTMLButtonElement;
      btn.dataset.key = String(idx + 1);
      btn.title = `shortcut: ${idx + 1}`;
      btn.addEventListener("click", () => submit(idx));
      row.appendChild(btn);
    });
    holder.appendChild(row);
  } else {
    const mid = Math.floor(menu.length / 2);
    const slider = el(doc, "input", "scale-slider") as HTMLInputElement;
    slider.type = "range";
    slider.min = "0";
    slider.max = String(menu.length - 1);
    slider.value = String(mid);
    const verbal = el(doc, "div", "slider-verbal", menu[mid].verbal);
    slider.addEventListener("input", () => {
      const c = menu[Number(slider.value)];
      if (c) verbal.textContent = c.verbal;
    });
    const go = el(doc, "button", "slider-submit", "submit") as HTMLButtonElement;
    go.addEventListener("click", () => submit(Number(slider.value)));
    holder.appendChild(verbal);
    holder.appendChild(slider);
    holder.appendChild(go);
  }
  const details = el(doc, "details", "numeric-details");
  details.appendChild(el(doc, "summary", "", "numeric values"));
  const table = el(doc, "table", "numeric-table");
  menu.forEach((c) => {
    const tr = el(doc, "tr", "");
    tr.appendChild(el(doc, "td", "", c.verbal));
    tr.appendChild(el(doc, "td", "", formatValue(c)));
    table.appendChild(tr);
  });
  details.appendChild(table);
  holder.appendChild(details);
  return holder;
}

function formatValue(c: Choice): string {
  return c.value_den === 1 ? String(c.value_num) : `${c.value_num}/${c.value_den}`;
}

function renderProgress(doc: Document, p: Progress): HTMLElement {
  const holder = el(doc, "div", "progress");
  const bar = el(doc, "progress", "progress-bar") as HTMLProgressElement;
  bar.max = p.total;
  bar.value = p.committed;
  holder.appendChild(bar);
  holder.appendChild(el(doc, "span", "progress-text", `${p.committed}/${p.total}`));
  return holder;
}

export function renderResultsCard(
  doc: Document,
  labels: string[],
  results: ResultsPayload | null | undefined,
): HTMLElement {
  if (
    !results ||
    !isFiniteVector(results.w_eigen) ||
    !isFiniteVector(results.w_approx) ||
    results.w_eigen.length !== labels.length ||
    typeof results.cr !== "number" ||
    !Number.isFinite(results.cr)
  ) {
    return errorCard(doc, "results payload malformed");
  }
  const card = el(doc, "div", "results-card");
  const badge = el(
    doc,
    "span",
    "cr-badge",
    `CR ${results.cr.toFixed(WEIGHT_DECIMALS)}`,
  );
  badge.classList.add(results.cr <= 0.1 ? "cr-ok" : "cr-bad");
  card.appendChild(badge);
  card.appendChild(barList(doc, "weight-row", labels, results.w_eigen, null));
  const details = el(doc, "details", "raw-toggle");
  details.appendChild(el(doc, "summary", "", "raw numbers"));
  const table = el(doc, "table", "raw-table");
  const head = el(doc, "tr", "");
  for (const h of ["object", "w_approx", "w_eigen"]) {
    head.appendChild(el(doc, "th", "", h));
  }
  table.appendChild(head);
  labels.forEach((lab, idx) => {
    const tr = el(doc, "tr", "");
    tr.appendChild(el(doc, "td", "", lab));
    tr.appendChild(el(doc, "td", "", fullPrecision(results.w_approx[idx])));
    tr.appendChild(el(doc, "td", "", fullPrecision(results.w_eigen[idx])));
    table.appendChild(tr);
  });
  details.appendChild(table);
  const stats = el(
    doc,
    "p",
    "raw-stats",
    `lambda_max=${fullPrecision(results.lambda_max)} ci=${fullPrecision(results.ci)} ` +
      `ri=${fullPrecision(results.ri)} cr=${fullPrecision(results.cr)}`,
  );
  details.appendChild(stats);
  card.appendChild(details);
  return card;
}

export function renderAggregateCard(
  doc: Document,
  labels: string[],
  agg: AggregatePayload | null | undefined,
): HTMLElement {
  if (
    !agg ||
    !isFiniteVector(agg.mean_w) ||
    agg.mean_w.length !== labels.length ||
    (agg.half_width !== undefined && !isFiniteVector(agg.half_width))
  ) {
    return errorCard(doc, "aggregate payload malformed");
  }
  const card = el(doc, "div", "aggregate-card");
  card.appendChild(
    el(
      doc,
      "h3",
      "aggregate-title",
      `panel mean, k = ${agg.k} expert${agg.k === 1 ? "" : "s"}, level ${agg.level}`,
    ),
  );
  card.appendChild(
    barList(doc, "agg-row", labels, agg.mean_w, agg.half_width ?? null),
  );
  return card;
}

function barList(
  doc: Document,
  rowClass: string,
  labels: string[],
  weights: number[],
  halfWidth: number[] | null,
): HTMLElement {
  const list = el(doc, "div", "bar-list");
  labels.forEach((lab, idx) => {
    const w = weights[idx];
    const row = el(doc, "div", rowClass);
    row.appendChild(el(doc, "span", "weight-label", lab));
    const track = el(doc, "div", "weight-track");
    const bar = el(doc, "div", "weight-bar");
    bar.style.width = `${clampPct(w * 100)}%`;
    track.appendChild(bar);
    if (halfWidth) {
      const hw = halfWidth[idx] ?? 0;
      const whisker = el(doc, "span", "whisker");
      whisker.style.left = `${clampPct((w - hw) * 100)}%`;
      whisker.style.width = `${clampPct(2 * hw * 100)}%`;
      track.appendChild(whisker);
    }
    row.appendChild(track);
    row.appendChild(el(doc, "span", "weight-value", w.toFixed(WEIGHT_DECIMALS)));
    if (halfWidth) {
      const hw = halfWidth[idx] ?? 0;
      row.appendChild(
        el(doc, "span", "agg-interval", `±${hw.toFixed(WEIGHT_DECIMALS)}`),
      );
    }
    list.appendChild(row);
  });
  return list;
}

export function errorCard(doc: Document, message: string): HTMLElement {
  return el(doc, "div", "error-card", message);
}

function isFiniteVector(v: unknown): v is number[] {
  return (
    Array.isArray(v) &&
    v.length > 0 &&
    v.every((x) => typeof x === "number" && Number.isFinite(x))
  );
}

function fullPrecision(x: number): string {
  return String(x);
}

function clampPct(x: number): number {
  return Math.max(0, Math.min(100, x));
}

function el(doc: Document, tag: string, cls: string, text?: string): HTMLElement {
  const node = doc.createElement(tag) as HTMLElement;
  if (cls) node.className = cls;
  if (text !== undefined) node.textContent = text;
  return node;
}
