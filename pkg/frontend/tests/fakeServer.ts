/** Minimal in-memory stand-in for the seedforge service, just enough state
 * for component tests: sessions live in a map, expansion returns canned
 * candidates minus anything already in the dictionary, feedback applies
 * accept/reject the way the real service does.
 */

import type { CandidateRow, EntryRow, SessionDoc } from "../src/types.js";

export interface RecordedCall {
  method: string;
  path: string;
  body?: unknown;
}

export interface FakeServer {
  fetchFn: (input: string, init?: RequestInit) => Promise<Response>;
  calls: RecordedCall[];
  sessions: Map<string, SessionDoc>;
  candidatePool: CandidateRow[];
}

function respond(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

function fail(status: number, error: string, detail: string): Response {
  return respond(status, { error, detail });
}

export function fakeServer(): FakeServer {
  const sessions = new Map<string, SessionDoc>();
  const calls: RecordedCall[] = [];
  let counter = 0;

  const candidatePool: CandidateRow[] = [
    { surface: "granite", score: 0.91, origin: "bath", model: "emb:fake" },
    { surface: "marble", score: 0.87, origin: "bath", model: "emb:fake" },
    { surface: "slate", score: 0.74, origin: "kitchen", model: "emb:fake" },
    { surface: "quartz", score: 0.66, origin: "kitchen", model: "emb:fake" },
  ];

  const fetchFn = async (input: string, init?: RequestInit): Promise<Response> => {
    const method = (init?.method ?? "GET").toUpperCase();
    const url = new URL(input, "http://fake");
    const path = decodeURIComponent(url.pathname);
    const body = init?.body ? JSON.parse(init.body as string) : undefined;
    calls.push({ method, path, body });

    if (path === "/models" && method === "GET") {
      return respond(200, [{ id: "emb:fake", kind: "embedding" }]);
    }

    if (path === "/sessions" && method === "POST") {
      counter += 1;
      const doc: SessionDoc = {
        id: `s${counter}`,
        name: (body as { name: string }).name,
        iteration: 0,
        created: "2020-01-01T00:00:00+00:00",
        updated: "2020-01-01T00:00:00+00:00",
        entries: [],
        pending: [],
      };
      sessions.set(doc.id, doc);
      return respond(201, doc);
    }

    const match = path.match(/^\/sessions\/([^/]+)(?:\/(.+))?$/);
    if (!match) return fail(404, "not_found", `no route ${path}`);
    const doc = sessions.get(match[1] as string);
    if (!doc) return fail(404, "not_found", `no session ${match[1]}`);
    const rest = match[2] ?? "";

    if (rest === "" && method === "GET") return respond(200, doc);

    if (rest === "entities" && method === "POST") {
      const { surface, label } = body as { surface: string; label?: string };
      if (doc.entries.some(
          (e) => e.surface.toLowerCase() === surface.toLowerCase())) {
        return fail(409, "duplicate_entity", `duplicate entity: '${surface}'`);
      }
      const entry: EntryRow = {
        surface,
        label: (label ?? "positive") as EntryRow["label"],
        origin: null,
        score: null,
        active: true,
        model: null,
        iteration: doc.iteration,
      };
      doc.entries = [...doc.entries, entry];
      return respond(200, doc);
    }

    const entityMatch = rest.match(/^entities\/(.+)$/);
    if (entityMatch) {
      const surface = entityMatch[1] as string;
      const index = doc.entries.findIndex(
        (e) => e.surface.toLowerCase() === surface.toLowerCase());
      if (index < 0) return fail(404, "not_found", `no entry '${surface}'`);
      const entry = doc.entries[index] as EntryRow;
      if (method === "PATCH") {
        const patch = body as { new_surface?: string; active?: boolean };
        const next = { ...entry };
        if (patch.new_surface !== undefined) next.surface = patch.new_surface;
        if (patch.active !== undefined) next.active = patch.active;
        doc.entries = doc.entries.map((e, i) => (i === index ? next : e));
        return respond(200, doc);
      }
      if (method === "DELETE") {
        doc.entries = doc.entries.filter((_, i) => i !== index);
        return respond(200, doc);
      }
    }

    if (rest === "expand" && method === "POST") {
      const { k } = body as { models: string[]; k: number };
      const taken = new Set(doc.entries.map((e) => e.surface.toLowerCase()));
      doc.pending = candidatePool
        .filter((c) => !taken.has(c.surface.toLowerCase()))
        .slice(0, k);
      return respond(200, doc);
    }

    if (rest === "feedback" && method === "POST") {
      const { decisions } = body as {
        decisions: { surface: string; verdict: string }[];
      };
      const pendingBySurface = new Map(
        doc.pending.map((c) => [c.surface.toLowerCase(), c]));
      for (const decision of decisions) {
        if (!pendingBySurface.has(decision.surface.toLowerCase())) {
          return fail(400, "unknown_candidate",
                      `candidate '${decision.surface}' is not pending`);
        }
      }
      for (const decision of decisions) {
        const candidate = pendingBySurface.get(
          decision.surface.toLowerCase()) as CandidateRow;
        doc.pending = doc.pending.filter((c) => c !== candidate);
        if (decision.verdict === "skip") continue;
        doc.entries = [...doc.entries, {
          surface: candidate.surface,
          label: decision.verdict === "accept" ? "positive" : "negative",
          origin: candidate.origin,
          score: candidate.score,
          active: true,
          model: candidate.model,
          iteration: doc.iteration,
        }];
      }
      if (decisions.length > 0) doc.iteration += 1;
      return respond(200, doc);
    }

    if (rest === "import" && method === "POST") {
      const { content } = body as { content: string; format: string };
      const surfaces = content.split("\n")
        .map((line) => line.trim())
        .filter((line) => line && !line.startsWith("#"));
      doc.entries = surfaces.map((surface) => ({
        surface, label: "positive" as const, origin: null, score: null,
        active: true, model: null, iteration: 0,
      }));
      doc.pending = [];
      doc.iteration = 0;
      return respond(200, doc);
    }

    if (rest === "highlight" && method === "POST") {
      const { document: text } = body as { document: string };
      const encoder = new TextEncoder();
      const spans = [];
      const actives = doc.entries.filter(
        (e) => e.active && e.label === "positive");
      for (const entry of actives) {
        const at = text.toLowerCase().indexOf(entry.surface.toLowerCase());
        if (at >= 0) {
          spans.push({
            start: encoder.encode(text.slice(0, at)).length,
            end: encoder.encode(
              text.slice(0, at + entry.surface.length)).length,
            surface: entry.surface,
          });
        }
      }
      spans.sort((a, b) => a.start - b.start);
      // drop overlaps so the payload is span-contract clean
      const clean = spans.filter(
        (s, i) => i === 0 || s.start >= (spans[i - 1] as { end: number }).end);
      return respond(200, { document: text, spans: clean });
    }

    return fail(404, "not_found", `no route ${method} ${path}`);
  };

  return { fetchFn, calls, sessions, candidatePool };
}
