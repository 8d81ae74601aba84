/** Wire types mirroring the service's JSON documents. */

export type LabelValue = "positive" | "negative";

export interface EntryRow {
  surface: string;
  label: LabelValue;
  origin: string | null;
  score: number | null;
  active: boolean;
  model: string | null;
  iteration: number;
}

export interface CandidateRow {
  surface: string;
  score: number;
  origin: string;
  model: string;
}

export interface SessionDoc {
  id: string;
  name: string;
  iteration: number;
  created: string;
  updated: string;
  entries: EntryRow[];
  pending: CandidateRow[];
}

export interface ModelDescriptor {
  id: string;
  kind: "embedding" | "category";
}

export interface Span {
  start: number;
  end: number;
  surface: string;
}

export interface HighlightResult {
  document: string;
  spans: Span[];
}

export type VerdictChoice = "accept" | "reject" | "skip";
