/** Typed client for the seedforge HTTP API.
 *
 * The dashboard never computes scores or rankings; everything numeric it
 * shows comes out of these calls verbatim.
 */

import type {
  HighlightResult,
  LabelValue,
  ModelDescriptor,
  SessionDoc,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    public detail: string,
  ) {
    super(`${code}: ${detail}`);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class SeedforgeApi {
  constructor(
    public baseUrl: string = "",
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<unknown> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.baseUrl + path, init);
    const text = await response.text();
    if (!response.ok) {
      let code = "http_error";
      let detail = text || String(response.status);
      try {
        const parsed = JSON.parse(text) as { error?: string; detail?: string };
        code = parsed.error ?? code;
        detail = parsed.detail ?? detail;
      } catch {
        // non-JSON error body; keep the raw text
      }
      throw new ApiError(response.status, code, detail);
    }
    return text ? JSON.parse(text) : null;
  }

  listModels(): Promise<ModelDescriptor[]> {
    return this.request("GET", "/models") as Promise<ModelDescriptor[]>;
  }

  createSession(name: string): Promise<SessionDoc> {
    return this.request("POST", "/sessions", { name }) as Promise<SessionDoc>;
  }

  getSession(id: string): Promise<SessionDoc> {
    return this.request(
      "GET",
      `/sessions/${encodeURIComponent(id)}`,
    ) as Promise<SessionDoc>;
  }

  addEntity(
    id: string,
    surface: string,
    label: LabelValue = "positive",
  ): Promise<SessionDoc> {
    return this.request("POST", `/sessions/${encodeURIComponent(id)}/entities`, {
      surface,
      label,
    }) as Promise<SessionDoc>;
  }

  patchEntity(
    id: string,
    surface: string,
    patch: { new_surface?: string; active?: boolean },
  ): Promise<SessionDoc> {
    return this.request(
      "PATCH",
      `/sessions/${encodeURIComponent(id)}/entities/${encodeURIComponent(surface)}`,
      patch,
    ) as Promise<SessionDoc>;
  }

  deleteEntity(id: string, surface: string): Promise<SessionDoc> {
    return this.request(
      "DELETE",
      `/sessions/${encodeURIComponent(id)}/entities/${encodeURIComponent(surface)}`,
    ) as Promise<SessionDoc>;
  }

  expandSession(id: string, models: string[], k: number): Promise<SessionDoc> {
    return this.request("POST", `/sessions/${encodeURIComponent(id)}/expand`, {
      models,
      k,
    }) as Promise<SessionDoc>;
  }

  submitFeedback(
    id: string,
    decisions: { surface: string; verdict: string }[],
  ): Promise<SessionDoc> {
    return this.request("POST", `/sessions/${encodeURIComponent(id)}/feedback`, {
      decisions,
    }) as Promise<SessionDoc>;
  }

  importDictionary(
    id: string,
    content: string,
    format: "seeds" | "csv" | "json",
  ): Promise<SessionDoc> {
    return this.request("POST", `/sessions/${encodeURIComponent(id)}/import`, {
      content,
      format,
    }) as Promise<SessionDoc>;
  }

  /** The export URL is handed to the browser so the download is the
   * server's bytes verbatim. */
  exportUrl(id: string, format: "csv" | "json"): string {
    return `${this.baseUrl}/sessions/${encodeURIComponent(id)}/export?format=${format}`;
  }

  highlight(
    id: string,
    document: string,
    options?: { case_insensitive?: boolean; word_boundary?: boolean },
  ): Promise<HighlightResult> {
    const body: Record<string, unknown> = { document };
    if (options) body.options = options;
    return this.request(
      "POST",
      `/sessions/${encodeURIComponent(id)}/highlight`,
      body,
    ) as Promise<HighlightResult>;
  }
}
