/** Typed client for the trial-serving HTTP API. */

export interface PhasePlan {
  phase: string;
  count: number;
}

export interface SessionStart {
  session_id: string;
  phases: PhasePlan[];
}

export interface ProblemView {
  session_id: string;
  index: number;
  total: number;
  phase: string;
  problem_id: string;
  config: string;
  panels: string[];
}

export interface ResponseAck {
  recorded: boolean;
  correct?: boolean;
}

export interface ConfigStats {
  correct: number;
  count: number;
  accuracy: number;
  mean_latency_ms: number;
}

export interface Summary {
  configs: Record<string, ConfigStats>;
  overall: ConfigStats;
  complete: boolean;
  expected: number;
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

export class TargetLeakError extends Error {}

export type FetchFn = (url: string, init?: RequestInit) => Promise<Response>;

/** Reject any server payload that names the answer index anywhere. */
export function assertNoTargetLeak(payload: unknown): void {
  const scan = (node: unknown): void => {
    if (Array.isArray(node)) {
      node.forEach(scan);
    } else if (node !== null && typeof node === "object") {
      for (const [key, value] of Object.entries(node)) {
        if (key === "target") {
          throw new TargetLeakError("payload contains a target field");
        }
        scan(value);
      }
    }
  };
  scan(payload);
}

export class TrialApi {
  constructor(
    private readonly base: string,
    private readonly fetchFn: FetchFn = (url, init) => fetch(url, init),
  ) {}

  private async getJson(path: string, guard = true): Promise<unknown> {
    const res = await this.fetchFn(this.base + path);
    if (!res.ok) {
      throw new ApiError(res.status, `GET ${path} failed: ${res.status}`);
    }
    const data: unknown = await res.json();
    if (guard) {
      assertNoTargetLeak(data);
    }
    return data;
  }

  async createSession(): Promise<SessionStart> {
    const res = await this.fetchFn(this.base + "/api/session", {
      method: "POST",
    });
    if (!res.ok) {
      throw new ApiError(res.status, `session start failed: ${res.status}`);
    }
    return (await res.json()) as SessionStart;
  }

  async fetchProblem(sessionId: string, index: number): Promise<ProblemView> {
    const path = `/api/problem?session=${sessionId}&index=${index}`;
    return (await this.getJson(path)) as ProblemView;
  }

  panelUrl(relative: string): string {
    return this.base + relative;
  }

  async submitResponse(
    sessionId: string,
    problemId: string,
    chosenIndex: number,
    latencyMs: number,
  ): Promise<ResponseAck> {
    const res = await this.fetchFn(this.base + "/api/response", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({
        session_id: sessionId,
        problem_id: problemId,
        chosen_index: chosenIndex,
        latency_ms: latencyMs,
      }),
    });
    if (!res.ok) {
      throw new ApiError(res.status, `response rejected: ${res.status}`);
    }
    return (await res.json()) as ResponseAck;
  }

  async fetchSummary(sessionId: string): Promise<Summary> {
    // summary legitimately reports per-problem outcomes in aggregate,
    // but still never names a target index
    const path = `/api/summary?session=${sessionId}`;
    return (await this.getJson(path)) as Summary;
  }

  exportUrl(): string {
    return this.base + "/api/export?format=csv";
  }

  async fetchExportCsv(): Promise<string> {
    const res = await this.fetchFn(this.exportUrl());
    if (!res.ok) {
      throw new ApiError(res.status, `export failed: ${res.status}`);
    }
    return res.text();
  }
}
