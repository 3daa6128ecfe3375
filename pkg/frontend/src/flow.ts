/** Session view-model: one screen state at a time, no DOM, no transitivity logic.
 *
 * The server is the single source of truth. This class only sequences the
 * API calls of one interview and exposes render-ready state: every choice it
 * can submit comes verbatim from the last GET next payload, every revision
 * candidate comes verbatim from the conflict payload, and progress is always
 * the server's committed/total pair, never a local counter.
 */

import {
  ApiClient,
  ApiError,
  isDone,
  type AggregatePayload,
  type Choice,
  type ConflictPayload,
  type OutcomePayload,
  type PairPayload,
  type Progress,
  type RelationWord,
  type ResultsPayload,
  type TriadPayload,
} from "./api.js";

export interface CandidateView {
  i: number;
  j: number;
  labelI: string;
  labelJ: string;
}

export interface ChoosingScreen {
  kind: "choosing";
  pair: PairPayload;
  inlineError: string | null;
}

export interface ConflictScreen {
  kind: "conflict";
  sentences: string[];
  pendingVerbal: string;
  candidates: CandidateView[];
  admissible: RelationWord[];
  stalled: boolean;
  /** index into candidates, or null while the expert has not picked a pair */
  selected: number | null;
  menu: Choice[];
  progress: Progress;
  inlineError: string | null;
}

export interface FinishedScreen {
  kind: "finished";
  results: ResultsPayload;
  aggregate: AggregatePayload | null;
  progress: Progress;
}

export interface RetryScreen {
  kind: "retry";
  message: string;
}

export interface LoadingScreen {
  kind: "loading";
}

export type Screen =
  | LoadingScreen
  | ChoosingScreen
  | ConflictScreen
  | FinishedScreen
  | RetryScreen;

const REL_PHRASE: Record<RelationWord, string> = {
  more: "is more important than",
  less: "is less important than",
  equal: "is as important as",
};

export function triadSentence(t: TriadPayload, labels: string[]): string {
  const m = labels[t.m - 1];
  const i = labels[t.i - 1];
  const j = labels[t.j - 1];
  let s =
    `You said ${m} ${REL_PHRASE[t.r_mj]} ${j} and ${m} ${REL_PHRASE[t.r_mi]} ${i}, ` +
    `so ${i} vs ${j} cannot be "${t.r_ij}"`;
  if (t.required) {
    s += `; it must be "${t.required}"`;
  }
  return s + ".";
}

export class SessionFlow {
  private screen: Screen = { kind: "loading" };
  private menu: Choice[] = [];
  private lastOp: (() => Promise<void>) | null = null;
  private listeners: Array<(s: Screen) => void> = [];

  constructor(
    private readonly api: ApiClient,
    readonly studyId: string,
    readonly sessionId: string,
    readonly labels: string[],
  ) {}

  get state(): Screen {
    return this.screen;
  }

  onChange(fn: (s: Screen) => void): void {
    this.listeners.push(fn);
  }

  async start(): Promise<void> {
    await this.guard(() => this.fetchNext());
  }

  async choose(index: number): Promise<void> {
    if (this.screen.kind !== "choosing") return;
    const c = this.menu[index];
    if (!c) return;
    await this.guard(async () => {
      const out = await this.api.submitJudgment(this.sessionId, {
        value_num: c.value_num,
        value_den: c.value_den,
      });
      await this.applyOutcome(out);
    });
  }

  selectCandidate(k: number): void {
    if (this.screen.kind !== "conflict") return;
    if (k < 0 || k >= this.screen.candidates.length) return;
    this.set({ ...this.screen, selected: k, inlineError: null });
  }

  async submitRevision(index: number): Promise<void> {
    if (this.screen.kind !== "conflict") return;
    const scr = this.screen;
    if (scr.selected === null) {
      this.set({ ...scr, inlineError: "pick a pair to revise first" });
      return;
    }
    const cand = scr.candidates[scr.selected];
    const c = scr.menu[index];
    if (!cand || !c) return;
    await this.guard(async () => {
      const out = await this.api.submitRevision(this.sessionId, cand.i, cand.j, {
        value_num: c.value_num,
        value_den: c.value_den,
      });
      await this.applyOutcome(out);
    });
  }

  async retry(): Promise<void> {
    const op = this.lastOp;
    if (op) await this.guard(op);
  }

  private async fetchNext(): Promise<void> {
    const p = await this.api.next(this.sessionId);
    if (isDone(p)) {
      await this.finish(p.progress);
      return;
    }
    this.menu = p.choices;
    this.set({ kind: "choosing", pair: p, inlineError: null });
  }

  private async applyOutcome(out: OutcomePayload): Promise<void> {
    if (out.status === "accepted") {
      if (out.done) {
        await this.finish(out.progress);
      } else {
        await this.fetchNext();
      }
      return;
    }
    this.set(this.conflictScreen(out));
  }

  private conflictScreen(out: ConflictPayload): ConflictScreen {
    const pend = this.menu.find(
      (c) =>
        c.value_num === out.pending.value_num && c.value_den === out.pending.value_den,
    );
    return {
      kind: "conflict",
      sentences: out.triads.map((t) => triadSentence(t, this.labels)),
      pendingVerbal:
        pend?.verbal ?? `${out.pending.value_num}/${out.pending.value_den}`,
      candidates: out.candidates.map((c) => ({
        i: c.i,
        j: c.j,
        labelI: this.labels[c.i - 1] ?? `#${c.i}`,
        labelJ: this.labels[c.j - 1] ?? `#${c.j}`,
      })),
      admissible: out.admissible,
      stalled: out.stalled,
      selected: out.candidates.length === 1 ? 0 : null,
      menu: this.menu,
      progress: out.progress,
      inlineError: null,
    };
  }

  private async finish(progress: Progress): Promise<void> {
    const results = await this.api.results(this.sessionId);
    let aggregate: AggregatePayload | null = null;
    try {
      aggregate = await this.api.aggregate(this.studyId);
    } catch {
      aggregate = null;
    }
    this.set({ kind: "finished", results, aggregate, progress });
  }

  private set(s: Screen): void {
    this.screen = s;
    for (const fn of this.listeners) fn(s);
  }

  private async guard(op: () => Promise<void>): Promise<void> {
    this.lastOp = op;
    try {
      await op();
    } catch (e) {
      if (e instanceof ApiError && (e.status === 409 || e.status === 422)) {
        const s = this.screen;
        if (s.kind === "choosing" || s.kind === "conflict") {
          this.set({ ...s, inlineError: e.detail });
        } else {
          this.set({ kind: "retry", message: e.message });
        }
      } else {
        this.set({
          kind: "retry",
          message: e instanceof Error ? e.message : String(e),
        });
      }
    }
  }
}
