/** Parse the response export and recompute per-configuration accuracy. */

export const EXPORT_HEADER =
  "session_id,problem_id,config,chosen,target,correct,latency_ms,timestamp";

export interface ExportRow {
  session_id: string;
  problem_id: string;
  config: string;
  chosen: number;
  target: number;
  correct: number;
  latency_ms: number;
  timestamp: string;
}

export function parseExport(text: string): ExportRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines[0] !== EXPORT_HEADER) {
    throw new Error(`unexpected export header: ${lines[0]}`);
  }
  return lines.slice(1).map((line) => {
    const parts = line.split(",");
    if (parts.length !== 8) {
      throw new Error(`malformed export row: ${line}`);
    }
    return {
      session_id: parts[0],
      problem_id: parts[1],
      config: parts[2],
      chosen: Number(parts[3]),
      target: Number(parts[4]),
      correct: Number(parts[5]),
      latency_ms: Number(parts[6]),
      timestamp: parts[7],
    };
  });
}

export interface AccuracyCell {
  correct: number;
  count: number;
  accuracy: number;
}

/** Accuracy per config plus overall, test-phase rows of one session.
 *
 * Familiarization problems carry ids starting with "famil"; the server's
 * summary excludes them, so the recomputation does too.
 */
export function recomputeAccuracy(
  rows: ExportRow[],
  sessionId: string,
): Record<string, AccuracyCell> {
  const cells: Record<string, AccuracyCell> = {};
  const bump = (key: string, correct: boolean) => {
    const cell = (cells[key] ??= { correct: 0, count: 0, accuracy: 0 });
    cell.count += 1;
    if (correct) {
      cell.correct += 1;
    }
  };
  for (const row of rows) {
    if (row.session_id !== sessionId || row.problem_id.startsWith("famil")) {
      continue;
    }
    const correct = row.chosen === row.target;
    if (correct !== (row.correct === 1)) {
      throw new Error(`inconsistent row: ${row.problem_id}`);
    }
    bump(row.config, correct);
    bump("overall", correct);
  }
  for (const cell of Object.values(cells)) {
    cell.accuracy = Math.round((10000 * cell.correct) / cell.count) / 100;
  }
  return cells;
}
