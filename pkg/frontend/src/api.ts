/** Typed fetch client for the paircomp HTTP API. */

export type RelationWord = "more" | "equal" | "less";

export interface ScaleSpec {
  kind: "saaty9" | "three_point";
  F?: number;
  G?: number;
}

export interface Choice {
  value_num: number;
  value_den: number;
  verbal: string;
}

export interface Progress {
  committed: number;
  total: number;
}

export interface PairPayload {
  i: number;
  j: number;
  label_i: string;
  label_j: string;
  choices: Choice[];
  progress: Progress;
}

export interface DonePayload {
  done: true;
  progress: Progress;
}

export type NextPayload = PairPayload | DonePayload;

export function isDone(p: NextPayload): p is DonePayload {
  return (p as DonePayload).done === true;
}

export interface TriadPayload {
  m: number;
  i: number;
  j: number;
  r_mj: RelationWord;
  r_ij: RelationWord;
  r_mi: RelationWord;
  required: RelationWord | null;
}

export interface AcceptedPayload {
  status: "accepted";
  done: boolean;
  progress: Progress;
}

export interface ConflictPayload {
  status: "conflict";
  triads: TriadPayload[];
  candidates: Array<{ i: number; j: number }>;
  admissible: RelationWord[];
  pending: { value_num: number; value_den: number };
  stalled: boolean;
  progress: Progress;
}

export type OutcomePayload = AcceptedPayload | ConflictPayload;

export interface ResultsPayload {
  w_approx: number[];
  w_eigen: number[];
  lambda_max: number;
  ci: number;
  ri: number;
  cr: number;
  acceptable: boolean;
}

export interface AggregatePayload {
  mean_w: number[];
  k: number;
  level: number;
  half_width?: number[];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

export class ApiClient {
  private readonly baseUrl: string;

  constructor(baseUrl: string) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  createStudy(labels: string[], scale: ScaleSpec): Promise<{ study_id: string }> {
    return this.request("POST", "/studies", { labels, scale });
  }

  createSession(studyId: string, expert: string): Promise<{ session_id: string }> {
    return this.request("POST", `/studies/${studyId}/sessions`, { expert });
  }

  next(sessionId: string): Promise<NextPayload> {
    return this.request("GET", `/sessions/${sessionId}/next`);
  }

  submitJudgment(
    sessionId: string,
    value: { value_num: number; value_den: number },
  ): Promise<OutcomePayload> {
    return this.request("POST", `/sessions/${sessionId}/judgments`, value);
  }

  submitRevision(
    sessionId: string,
    i: number,
    j: number,
    value: { value_num: number; value_den: number },
  ): Promise<OutcomePayload> {
    return this.request("POST", `/sessions/${sessionId}/revisions`, {
      i,
      j,
      value_num: value.value_num,
      value_den: value.value_den,
    });
  }

  results(sessionId: string): Promise<ResultsPayload> {
    return this.request("GET", `/sessions/${sessionId}/results`);
  }

  aggregate(studyId: string, level = 0.95): Promise<AggregatePayload> {
    return this.request("GET", `/studies/${studyId}/aggregate?level=${level}`);
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const res = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await res.text();
    let data: unknown = null;
    try {
      data = text ? JSON.parse(text) : null;
    } catch {
      data = null;
    }
    if (!res.ok) {
      throw new ApiError(res.status, detailOf(data) ?? text ?? res.statusText);
    }
    return data as T;
  }
}

function detailOf(data: unknown): string | null {
  if (data && typeof data === "object" && "detail" in data) {
    const d = (data as { detail: unknown }).detail;
    return typeof d === "string" ? d : JSON.stringify(d);
  }
  return null;
}
