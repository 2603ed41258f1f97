/** Entry point: wire the API, flow and view together in one page. */

import { TrialApi } from "./api.js";
import { DuplicateResponseError, SessionFlow } from "./flow.js";
import { TrialView } from "./view.js";

function apiBase(): string {
  const override = new URLSearchParams(window.location.search).get("api");
  return override ?? "";
}

export function boot(root: HTMLElement): void {
  const api = new TrialApi(apiBase());
  const flow = new SessionFlow(api);
  let busy = false;

  const view = new TrialView(root, api, {
    onChoose: (candidate) => void choose(candidate),
    onRetry: () => void run(),
  });

  async function choose(candidate: number): Promise<void> {
    if (busy || !flow.current) {
      return;
    }
    busy = true;
    try {
      const wasFamiliarization = flow.current.phase === "familiarization";
      await flow.choose(candidate);
      if (wasFamiliarization && flow.lastFeedback) {
        view.showFeedback(flow.lastFeedback);
        await new Promise((resolve) => setTimeout(resolve, 900));
      }
      await next();
    } catch (err) {
      if (err instanceof DuplicateResponseError) {
        return; // already answered; the advance is in flight
      }
      view.showError(String(err));
    } finally {
      busy = false;
    }
  }

  async function next(): Promise<void> {
    const problem = await flow.advance();
    if (problem) {
      view.showProblem(problem, null);
    } else {
      view.showSummary(await flow.summary());
    }
  }

  async function run(): Promise<void> {
    try {
      view.showProblem(await flow.start(), null);
    } catch (err) {
      view.showError(String(err));
    }
  }

  void run();
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  boot(document.getElementById("app") as HTMLElement);
}
