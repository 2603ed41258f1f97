/** In-memory stand-in for the trial server, same HTTP contract. */

export const CONFIGS = [
  "Center",
  "Grid2x2",
  "Grid3x3",
  "LeftRight",
  "UpDown",
  "OutInCenter",
  "OutInGrid",
];

interface StoredProblem {
  problem_id: string;
  config: string;
  target: number;
}

interface StoredResponse {
  session_id: string;
  problem_id: string;
  config: string;
  phase: string;
  chosen: number;
  target: number;
  correct: number;
  latency_ms: number;
  timestamp: string;
}

function round2(value: number): number {
  return Math.round(value * 100) / 100;
}

export class FakeServer {
  readonly familiarization: StoredProblem[] = [];
  readonly test: StoredProblem[] = [];
  private sessions = new Map<string, { order: StoredProblem[] }>();
  private responses: StoredResponse[] = [];
  private nextSession = 1;
  /** Every JSON body served, for leak inspection. */
  readonly servedPayloads: { path: string; body: unknown }[] = [];

  constructor() {
    for (let i = 0; i < 10; i++) {
      this.familiarization.push({
        problem_id: `famil_${String(i).padStart(4, "0")}`,
        config: "Center",
        target: (i * 3) % 8,
      });
    }
    CONFIGS.forEach((config, ci) => {
      for (let j = 0; j < 2; j++) {
        this.test.push({
          problem_id: `${config.toLowerCase()}_${String(j).padStart(4, "0")}`,
          config,
          target: (ci * 2 + j * 5) % 8,
        });
      }
    });
  }

  targetOf(problemId: string): number {
    const all = [...this.familiarization, ...this.test];
    const found = all.find((p) => p.problem_id === problemId);
    if (!found) {
      throw new Error(`unknown problem ${problemId}`);
    }
    return found.target;
  }

  /** Drop-in replacement for window.fetch. */
  fetch = async (url: string, init?: RequestInit): Promise<Response> => {
    const parsed = new URL(url, "http://fake");
    const path = parsed.pathname;
    const method = init?.method ?? "GET";

    const json = (body: unknown, status = 200): Response => {
      if (status === 200) {
        this.servedPayloads.push({ path, body });
      }
      return new Response(JSON.stringify(body), {
        status,
        headers: { "Content-Type": "application/json" },
      });
    };

    if (path === "/api/session" && method === "POST") {
      const sid = `sess${this.nextSession++}`;
      this.sessions.set(sid, {
        order: [...this.familiarization, ...this.test],
      });
      return json({
        session_id: sid,
        phases: [
          { phase: "familiarization", count: this.familiarization.length },
          { phase: "test", count: this.test.length },
        ],
      });
    }

    if (path === "/api/problem") {
      const sess = this.sessions.get(parsed.searchParams.get("session") ?? "");
      const index = Number(parsed.searchParams.get("index"));
      if (!sess || !(index >= 0 && index < sess.order.length)) {
        return json({ detail: "not found" }, 404);
      }
      const problem = sess.order[index];
      const phase =
        index < this.familiarization.length ? "familiarization" : "test";
      return json({
        session_id: parsed.searchParams.get("session"),
        index,
        total: sess.order.length,
        phase,
        problem_id: problem.problem_id,
        config: problem.config,
        panels: Array.from(
          { length: 16 },
          (_, k) => `/api/panel/${problem.problem_id}/${k}.png`,
        ),
      });
    }

    if (path === "/api/response" && method === "POST") {
      const body = JSON.parse(String(init?.body));
      const sess = this.sessions.get(body.session_id);
      if (!sess) {
        return json({ detail: "unknown session" }, 404);
      }
      const pos = sess.order.findIndex(
        (p) => p.problem_id === body.problem_id,
      );
      if (pos < 0) {
        return json({ detail: "unknown problem" }, 404);
      }
      const duplicate = this.responses.some(
        (r) =>
          r.session_id === body.session_id &&
          r.problem_id === body.problem_id,
      );
      if (duplicate) {
        return json({ detail: "already answered" }, 409);
      }
      const problem = sess.order[pos];
      const phase =
        pos < this.familiarization.length ? "familiarization" : "test";
      const correct = body.chosen_index === problem.target;
      this.responses.push({
        session_id: body.session_id,
        problem_id: body.problem_id,
        config: problem.config,
        phase,
        chosen: body.chosen_index,
        target: problem.target,
        correct: correct ? 1 : 0,
        latency_ms: body.latency_ms,
        timestamp: new Date().toISOString(),
      });
      const ack: Record<string, unknown> = { recorded: true };
      if (phase === "familiarization") {
        ack.correct = correct;
      }
      return json(ack);
    }

    if (path === "/api/summary") {
      const sid = parsed.searchParams.get("session") ?? "";
      const sess = this.sessions.get(sid);
      if (!sess) {
        return json({ detail: "unknown session" }, 404);
      }
      const testRows = this.responses.filter(
        (r) => r.session_id === sid && r.phase === "test",
      );
      const per = new Map<string, StoredResponse[]>();
      for (const row of testRows) {
        const list = per.get(row.config);
        if (list) {
          list.push(row);
        } else {
          per.set(row.config, [row]);
        }
      }
      const stats = (rows: StoredResponse[]) => ({
        correct: rows.reduce((n, r) => n + r.correct, 0),
        count: rows.length,
        accuracy: round2(
          (100 * rows.reduce((n, r) => n + r.correct, 0)) / rows.length,
        ),
        mean_latency_ms: round2(
          rows.reduce((n, r) => n + r.latency_ms, 0) / rows.length,
        ),
      });
      const configs: Record<string, unknown> = {};
      for (const name of [...per.keys()].sort()) {
        configs[name] = stats(per.get(name)!);
      }
      return json({
        configs,
        overall: testRows.length
          ? stats(testRows)
          : { correct: 0, count: 0, accuracy: 0, mean_latency_ms: 0 },
        complete: testRows.length === this.test.length,
        expected: this.test.length,
      });
    }

    if (path === "/api/export") {
      if (parsed.searchParams.get("format") !== "csv") {
        return json({ detail: "only csv" }, 400);
      }
      const lines = [
        "session_id,problem_id,config,chosen,target,correct,latency_ms,timestamp",
      ];
      for (const r of this.responses) {
        lines.push(
          [
            r.session_id,
            r.problem_id,
            r.config,
            r.chosen,
            r.target,
            r.correct,
            r.latency_ms,
            r.timestamp,
          ].join(","),
        );
      }
      return new Response(lines.join("\n") + "\n", {
        status: 200,
        headers: { "Content-Type": "text/csv" },
      });
    }

    return json({ detail: `no route ${method} ${path}` }, 404);
  };
}
