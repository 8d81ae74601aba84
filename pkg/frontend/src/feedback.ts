/** Build the feedback submission payload from the verdict selections.
 *
 * The payload carries exactly one decision per non-skip row and nothing
 * else: skipped rows are simply not judged, and the next expansion
 * replaces the pending batch anyway.
 */

import type { CandidateRow, VerdictChoice } from "./types.js";

export interface Decision {
  surface: string;
  verdict: "accept" | "reject";
}

export function buildFeedbackPayload(
  pending: CandidateRow[],
  verdicts: Record<string, VerdictChoice>,
): { decisions: Decision[] } {
  const decisions: Decision[] = [];
  for (const candidate of pending) {
    const verdict = verdicts[candidate.surface] ?? "skip";
    if (verdict === "accept" || verdict === "reject") {
      decisions.push({ surface: candidate.surface, verdict });
    }
  }
  return { decisions };
}
