/** Dashboard state: the server mirror plus view settings and drafts.
 *
 * The server is the source of truth for entries and pending candidates;
 * everything else here (verdict selections, sort/search/page, the draft
 * document) is client-side working state that survives reloads via
 * persistence.ts.
 */

import type { CandidateRow, EntryRow, VerdictChoice } from "./types.js";

export type SortColumn =
  | "surface"
  | "label"
  | "origin"
  | "score"
  | "active"
  | "model"
  | "iteration";

export type SortDirection = "asc" | "desc";

export interface UiState {
  sessionId: string | null;
  sessionName: string;
  iteration: number;
  entries: EntryRow[];
  pending: CandidateRow[];
  /** per-pending-row verdict selection, keyed by surface; default skip */
  verdicts: Record<string, VerdictChoice>;
  selectedModels: string[];
  k: number;
  sortColumn: SortColumn | null;
  sortDirection: SortDirection;
  search: string;
  page: number;
  pageSize: number;
  draftDocument: string;
}

export const DEFAULT_K = 20;
export const DEFAULT_PAGE_SIZE = 25;

export function initialState(): UiState {
  return {
    sessionId: null,
    sessionName: "",
    iteration: 0,
    entries: [],
    pending: [],
    verdicts: {},
    selectedModels: [],
    k: DEFAULT_K,
    sortColumn: null,
    sortDirection: "asc",
    search: "",
    page: 0,
    pageSize: DEFAULT_PAGE_SIZE,
    draftDocument: "",
  };
}

/** Fold a server session document into the state; the server response is
 * authoritative for entries/pending. Verdicts for surfaces no longer
 * pending are dropped; new candidates default to skip. */
export function applySessionDoc(
  state: UiState,
  doc: {
    id: string;
    name: string;
    iteration: number;
    entries: EntryRow[];
    pending: CandidateRow[];
  },
): UiState {
  const verdicts: Record<string, VerdictChoice> = {};
  for (const candidate of doc.pending) {
    verdicts[candidate.surface] = state.verdicts[candidate.surface] ?? "skip";
  }
  return {
    ...state,
    sessionId: doc.id,
    sessionName: doc.name,
    iteration: doc.iteration,
    entries: doc.entries,
    pending: doc.pending,
    verdicts,
  };
}

export function setVerdict(
  state: UiState,
  surface: string,
  verdict: VerdictChoice,
): UiState {
  return { ...state, verdicts: { ...state.verdicts, [surface]: verdict } };
}

export function verdictFor(state: UiState, surface: string): VerdictChoice {
  return state.verdicts[surface] ?? "skip";
}
