/** Session state machine: one problem at a time, one response each. */

import { ProblemView, ResponseAck, SessionStart, Summary, TrialApi } from "./api.js";

export type Clock = () => number;

export interface Feedback {
  problemId: string;
  correct: boolean;
}

export class DuplicateResponseError extends Error {}

export class SessionFlow {
  private session: SessionStart | null = null;
  private problem: ProblemView | null = null;
  private shownAt = 0;
  private index = 0;
  private total = 0;
  private answered = new Set<string>();
  /** Result of the last familiarization answer, cleared on advance. */
  lastFeedback: Feedback | null = null;

  constructor(
    private readonly api: TrialApi,
    private readonly now: Clock = () => Date.now(),
  ) {}

  get sessionId(): string {
    if (!this.session) {
      throw new Error("session not started");
    }
    return this.session.session_id;
  }

  get phases(): SessionStart["phases"] {
    return this.session ? this.session.phases : [];
  }

  get current(): ProblemView | null {
    return this.problem;
  }

  get done(): boolean {
    return this.session !== null && this.index >= this.total;
  }

  async start(): Promise<ProblemView> {
    this.session = await this.api.createSession();
    this.total = this.session.phases.reduce((n, p) => n + p.count, 0);
    this.index = 0;
    return this.show();
  }

  private async show(): Promise<ProblemView> {
    this.problem = await this.api.fetchProblem(this.sessionId, this.index);
    this.shownAt = this.now();
    return this.problem;
  }

  /** Submit a choice for the displayed problem and advance. */
  async choose(candidate: number): Promise<ResponseAck> {
    const problem = this.problem;
    if (!problem) {
      throw new Error("no problem displayed");
    }
    if (candidate < 0 || candidate > 7) {
      throw new RangeError(`candidate index out of range: ${candidate}`);
    }
    if (this.answered.has(problem.problem_id)) {
      throw new DuplicateResponseError(problem.problem_id);
    }
    const latency = Math.max(1, this.now() - this.shownAt);
    const ack = await this.api.submitResponse(
      this.sessionId,
      problem.problem_id,
      candidate,
      latency,
    );
    this.answered.add(problem.problem_id);
    this.lastFeedback =
      ack.correct === undefined
        ? null
        : { problemId: problem.problem_id, correct: ack.correct };
    this.index += 1;
    this.problem = null;
    return ack;
  }

  /** Load the next problem, or null when the session is finished. */
  async advance(): Promise<ProblemView | null> {
    if (this.done) {
      return null;
    }
    this.lastFeedback = null;
    return this.show();
  }

  async summary(): Promise<Summary> {
    return this.api.fetchSummary(this.sessionId);
  }
}
