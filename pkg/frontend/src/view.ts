/** DOM rendering for the trial flow: matrix, candidates, summary. */

import { ProblemView, Summary, TrialApi } from "./api.js";
import { Feedback } from "./flow.js";

const CONFIG_COLUMNS = [
  "Center",
  "Grid2x2",
  "Grid3x3",
  "LeftRight",
  "UpDown",
  "OutInCenter",
  "OutInGrid",
];

export interface ViewCallbacks {
  onChoose: (candidate: number) => void;
  onRetry: () => void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

export class TrialView {
  private feedbackArea: HTMLElement | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: TrialApi,
    private readonly callbacks: ViewCallbacks,
  ) {
    document.addEventListener("keydown", (event) => {
      // keyboard shortcuts 1..8 mirror the candidate labels
      const digit = Number(event.key);
      if (digit >= 1 && digit <= 8 && this.root.querySelector(".candidates")) {
        this.callbacks.onChoose(digit - 1);
      }
    });
  }

  private clear(): void {
    this.root.textContent = "";
    this.feedbackArea = null;
  }

  /** 3x3 context grid with a "?" cell, then 8 labeled candidates. */
  showProblem(problem: ProblemView, feedback: Feedback | null): void {
    this.clear();

    const header = el("div", "status");
    header.textContent = `${problem.phase} ${problem.index + 1} / ${problem.total}`;
    this.root.appendChild(header);

    const matrix = el("div", "matrix");
    for (let i = 0; i < 8; i++) {
      const img = el("img", "panel");
      img.src = this.api.panelUrl(problem.panels[i]);
      matrix.appendChild(img);
    }
    matrix.appendChild(el("div", "panel missing", "?"));
    this.root.appendChild(matrix);

    const strip = el("div", "candidates");
    for (let k = 0; k < 8; k++) {
      const cell = el("button", "candidate");
      cell.type = "button";
      const img = el("img");
      img.src = this.api.panelUrl(problem.panels[8 + k]);
      cell.appendChild(img);
      cell.appendChild(el("span", "label", String(k + 1)));
      cell.addEventListener("click", () => this.callbacks.onChoose(k));
      strip.appendChild(cell);
    }
    this.root.appendChild(strip);

    if (problem.phase === "familiarization") {
      this.feedbackArea = el("div", "feedback");
      if (feedback) {
        this.feedbackArea.textContent = feedback.correct
          ? "Correct"
          : "Incorrect";
        this.feedbackArea.classList.add(feedback.correct ? "good" : "bad");
      }
      this.root.appendChild(this.feedbackArea);
    }
  }

  showFeedback(feedback: Feedback): void {
    if (this.feedbackArea) {
      this.feedbackArea.textContent = feedback.correct
        ? "Correct"
        : "Incorrect";
      this.feedbackArea.classList.add(feedback.correct ? "good" : "bad");
    }
  }

  /** Accuracy table: one column per configuration plus overall. */
  showSummary(summary: Summary): void {
    this.clear();
    this.root.appendChild(el("h2", undefined, "Session summary"));
    if (!summary.complete) {
      this.root.appendChild(
        el(
          "div",
          "warning",
          `Partial results: ${summary.overall.count} of ${summary.expected} answered`,
        ),
      );
    }

    const table = el("table", "summary");
    const head = el("tr");
    const body = el("tr");
    for (const name of CONFIG_COLUMNS) {
      head.appendChild(el("th", undefined, name));
      const cell = summary.configs[name];
      body.appendChild(
        el("td", undefined, cell ? cell.accuracy.toFixed(2) : "-"),
      );
    }
    head.appendChild(el("th", undefined, "Overall"));
    body.appendChild(el("td", undefined, summary.overall.accuracy.toFixed(2)));
    table.appendChild(head);
    table.appendChild(body);
    this.root.appendChild(table);

    const link = el("a", "export", "Download responses (CSV)");
    link.href = this.api.exportUrl();
    this.root.appendChild(link);
  }

  /** Network or expired-session problems surface as a retry banner. */
  showError(message: string): void {
    this.clear();
    const banner = el("div", "banner", message + " ");
    const retry = el("button", undefined, "Retry");
    retry.type = "button";
    retry.addEventListener("click", () => this.callbacks.onRetry());
    banner.appendChild(retry);
    this.root.appendChild(banner);
  }
}
