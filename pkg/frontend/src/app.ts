/** Dashboard wiring: entity table, feedback table, highlight view, export.
 *
 * The server is the source of truth — every mutation re-renders from the
 * session document it returns. Sort, search, and pagination are pure view
 * transforms over that mirror, and the whole working state is cached in
 * local storage so a reload restores the view instantly.
 */

import { ApiError, SeedforgeApi } from "./api.js";
import { buildFeedbackPayload } from "./feedback.js";
import {
  loadState,
  saveState,
  type KeyValueStorage,
} from "./persistence.js";
import {
  applySessionDoc,
  initialState,
  setVerdict,
  verdictFor,
  type SortColumn,
  type UiState,
} from "./state.js";
import { segmentDocument } from "./spans.js";
import type {
  LabelValue,
  ModelDescriptor,
  SessionDoc,
  Span,
  VerdictChoice,
} from "./types.js";
import { visibleEntries } from "./views.js";

export interface AppOptions {
  api: SeedforgeApi;
  storage: KeyValueStorage;
}

const SORTABLE: SortColumn[] = [
  "surface", "label", "origin", "score", "active", "model", "iteration",
];

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export class DashboardApp {
  state: UiState;
  models: ModelDescriptor[] = [];
  busy = false;
  ready: Promise<void>;
  private spans: Span[] = [];

  constructor(
    private root: HTMLElement,
    private api: SeedforgeApi,
    private storage: KeyValueStorage,
  ) {
    this.state = loadState(storage);
    this.renderSkeleton();
    this.update();
    this.ready = this.fetchModels();
  }

  private setState(next: UiState): void {
    this.state = next;
    saveState(this.storage, next);
    this.update();
  }

  private async fetchModels(): Promise<void> {
    try {
      this.models = await this.api.listModels();
      if (this.state.selectedModels.length === 0 && this.models.length > 0) {
        this.setState({
          ...this.state,
          selectedModels: this.models.map((m) => m.id),
        });
        return;
      }
    } catch (exc) {
      this.showBanner(`cannot reach the service: ${String(exc)}`);
    }
    this.update();
  }

  private showBanner(message: string): void {
    const banner = this.q("banner");
    banner.textContent = message;
    banner.hidden = message === "";
  }

  private q(testId: string): HTMLElement {
    const el = this.root.querySelector(`[data-testid="${testId}"]`);
    if (!el) throw new Error(`missing element ${testId}`);
    return el as HTMLElement;
  }

  /** Wrap a server call: busy flag, banner on network failure. */
  private async withServer<T>(
    action: () => Promise<T>,
    onError?: (error: ApiError) => void,
  ): Promise<T | null> {
    if (this.busy) return null;
    this.busy = true;
    this.update();
    try {
      const result = await action();
      this.showBanner("");
      return result;
    } catch (exc) {
      if (exc instanceof ApiError && onError) {
        onError(exc);
      } else {
        // network failure or unhandled error: non-blocking banner,
        // local drafts stay as they are
        this.showBanner(String(exc));
      }
      return null;
    } finally {
      this.busy = false;
      this.update();
    }
  }

  private adopt(doc: SessionDoc): void {
    this.setState(applySessionDoc(this.state, doc));
  }

  // --- actions (the DOM handlers below call these; tests may too) ---

  async createSession(name: string): Promise<void> {
    const doc = await this.withServer(() => this.api.createSession(name));
    if (doc) {
      this.spans = [];
      this.setState(applySessionDoc({ ...initialState(), k: this.state.k,
        selectedModels: this.state.selectedModels,
        pageSize: this.state.pageSize }, doc));
    }
  }

  async loadSession(id: string): Promise<void> {
    const doc = await this.withServer(() => this.api.getSession(id));
    if (doc) this.adopt(doc);
  }

  async addEntity(surface: string, label: LabelValue): Promise<void> {
    if (!this.state.sessionId) return;
    const sid = this.state.sessionId;
    const doc = await this.withServer(
      () => this.api.addEntity(sid, surface, label),
      (error) => this.setInlineError("add-error", error.detail),
    );
    if (doc) {
      this.setInlineError("add-error", "");
      this.adopt(doc);
    }
  }

  async renameEntity(surface: string, newSurface: string): Promise<void> {
    if (!this.state.sessionId) return;
    const sid = this.state.sessionId;
    const doc = await this.withServer(
      () => this.api.patchEntity(sid, surface, { new_surface: newSurface }),
      (error) => this.setInlineError("table-error", error.detail),
    );
    if (doc) {
      this.setInlineError("table-error", "");
      this.adopt(doc);
    }
  }

  async setEntityActive(surface: string, active: boolean): Promise<void> {
    if (!this.state.sessionId) return;
    const sid = this.state.sessionId;
    const doc = await this.withServer(
      () => this.api.patchEntity(sid, surface, { active }),
      (error) => this.setInlineError("table-error", error.detail),
    );
    if (doc) this.adopt(doc);
  }

  async deleteEntity(surface: string): Promise<void> {
    if (!this.state.sessionId) return;
    const sid = this.state.sessionId;
    const doc = await this.withServer(
      () => this.api.deleteEntity(sid, surface),
      (error) => this.setInlineError("table-error", error.detail),
    );
    if (doc) this.adopt(doc);
  }

  async expand(): Promise<void> {
    if (!this.state.sessionId) return;
    const sid = this.state.sessionId;
    const doc = await this.withServer(
      () => this.api.expandSession(sid, this.state.selectedModels, this.state.k),
      (error) => this.setInlineError("feedback-error", error.detail),
    );
    if (doc) {
      this.setInlineError("feedback-error", "");
      this.adopt(doc);
    }
  }

  async submitFeedback(): Promise<void> {
    if (!this.state.sessionId) return;
    const sid = this.state.sessionId;
    const payload = buildFeedbackPayload(this.state.pending, this.state.verdicts);
    const doc = await this.withServer(
      () => this.api.submitFeedback(sid, payload.decisions),
      (error) => this.setInlineError("feedback-error", error.detail),
    );
    if (doc) {
      this.setInlineError("feedback-error", "");
      // feedback table clears: judged rows are gone server-side, the rest
      // of the batch was skipped implicitly
      this.adopt({ ...doc, pending: [] });
      if (this.state.draftDocument.trim()) {
        await this.runHighlight();
      }
    }
  }

  async runHighlight(): Promise<void> {
    if (!this.state.sessionId) return;
    const draft = this.state.draftDocument;
    if (!draft.trim()) {
      this.spans = [];
      this.update();
      return;
    }
    const sid = this.state.sessionId;
    const result = await this.withServer(() => this.api.highlight(sid, draft));
    if (result) {
      this.spans = result.spans;
      this.update();
    }
  }

  async importContent(content: string, format: "seeds" | "csv" | "json"):
      Promise<void> {
    if (!this.state.sessionId) return;
    const sid = this.state.sessionId;
    const doc = await this.withServer(
      () => this.api.importDictionary(sid, content, format),
      (error) => this.setInlineError("import-error", error.detail),
    );
    if (doc) {
      this.setInlineError("import-error", "");
      this.adopt(doc);
    }
  }

  setVerdictChoice(surface: string, verdict: VerdictChoice): void {
    this.setState(setVerdict(this.state, surface, verdict));
  }

  private setInlineError(testId: string, message: string): void {
    const el = this.q(testId);
    el.textContent = message;
    el.hidden = message === "";
  }

  // --- rendering ---

  private renderSkeleton(): void {
    this.root.innerHTML = `
      <div class="banner" data-testid="banner" hidden></div>
      <section class="session-bar">
        <input data-testid="session-name" placeholder="new session name">
        <button data-testid="create-session">Create session</button>
        <input data-testid="session-id-input" placeholder="existing session id">
        <button data-testid="load-session">Load</button>
        <span class="session-info" data-testid="session-info"></span>
      </section>
      <section class="models-bar">
        <span data-testid="models"></span>
        <label>top-k <input data-testid="k-input" type="number" min="1"
          max="1000" size="4"></label>
      </section>
      <section class="entity-section">
        <h2>Entity table</h2>
        <input data-testid="search" placeholder="search surfaces">
        <span class="inline-error" data-testid="table-error" hidden></span>
        <table class="entity-table">
          <thead data-testid="entity-head"></thead>
          <tbody data-testid="entity-body"></tbody>
        </table>
        <div class="pager">
          <button data-testid="prev-page">&laquo;</button>
          <span data-testid="page-info"></span>
          <button data-testid="next-page">&raquo;</button>
        </div>
        <form data-testid="add-form">
          <input data-testid="add-surface" placeholder="add entity">
          <select data-testid="add-label">
            <option value="positive">positive</option>
            <option value="negative">negative</option>
          </select>
          <button data-testid="add-button" type="submit">Add</button>
          <span class="inline-error" data-testid="add-error" hidden></span>
        </form>
        <div class="io-bar">
          <a data-testid="export-csv" download>Export CSV</a>
          <a data-testid="export-json" download>Export JSON</a>
        </div>
        <details>
          <summary>Import</summary>
          <input data-testid="import-file" type="file">
          <textarea data-testid="import-content"
            placeholder="one seed per line"></textarea>
          <select data-testid="import-format">
            <option value="seeds">seeds</option>
            <option value="csv">csv</option>
            <option value="json">json</option>
          </select>
          <button data-testid="import-button">Import</button>
          <span class="inline-error" data-testid="import-error" hidden></span>
        </details>
      </section>
      <section class="feedback-section">
        <h2>Feedback table</h2>
        <button data-testid="expand">Expand seed set</button>
        <span class="inline-error" data-testid="feedback-error" hidden></span>
        <table class="feedback-table">
          <thead><tr><th>surface</th><th>score</th><th>origin</th>
            <th>model</th><th>verdict</th></tr></thead>
          <tbody data-testid="feedback-body"></tbody>
        </table>
        <button data-testid="submit-feedback">Submit feedback</button>
      </section>
      <section class="highlight-section">
        <h2>Highlight preview</h2>
        <textarea data-testid="draft" rows="5"
          placeholder="paste a test document"></textarea>
        <button data-testid="run-highlight">Highlight</button>
        <div class="preview" data-testid="highlight-preview"></div>
      </section>
    `;
    this.bindSkeleton();
  }

  private bindSkeleton(): void {
    this.q("create-session").addEventListener("click", () => {
      const name = (this.q("session-name") as HTMLInputElement).value.trim();
      if (name) void this.createSession(name);
    });
    this.q("load-session").addEventListener("click", () => {
      const id = (this.q("session-id-input") as HTMLInputElement).value.trim();
      if (id) void this.loadSession(id);
    });
    this.q("search").addEventListener("input", (event) => {
      const value = (event.target as HTMLInputElement).value;
      this.setState({ ...this.state, search: value, page: 0 });
    });
    this.q("k-input").addEventListener("change", (event) => {
      const value = Number((event.target as HTMLInputElement).value);
      if (Number.isFinite(value) && value >= 1) {
        this.setState({ ...this.state, k: Math.floor(value) });
      }
    });
    this.q("prev-page").addEventListener("click", () => {
      this.setState({ ...this.state, page: this.state.page - 1 });
    });
    this.q("next-page").addEventListener("click", () => {
      this.setState({ ...this.state, page: this.state.page + 1 });
    });
    this.q("add-form").addEventListener("submit", (event) => {
      event.preventDefault();
      const surface = (this.q("add-surface") as HTMLInputElement).value;
      const label = (this.q("add-label") as HTMLSelectElement)
        .value as LabelValue;
      if (surface.trim()) {
        void this.addEntity(surface, label).then(() => {
          (this.q("add-surface") as HTMLInputElement).value = "";
        });
      }
    });
    this.q("import-file").addEventListener("change", (event) => {
      const input = event.target as HTMLInputElement;
      const file = input.files && input.files[0];
      if (!file) return;
      void file.text().then((text) => {
        (this.q("import-content") as HTMLTextAreaElement).value = text;
      });
    });
    this.q("import-button").addEventListener("click", () => {
      const content = (this.q("import-content") as HTMLTextAreaElement).value;
      const format = (this.q("import-format") as HTMLSelectElement)
        .value as "seeds" | "csv" | "json";
      if (content.trim()) void this.importContent(content, format);
    });
    this.q("expand").addEventListener("click", () => void this.expand());
    this.q("submit-feedback").addEventListener(
      "click", () => void this.submitFeedback());
    this.q("draft").addEventListener("change", (event) => {
      const value = (event.target as HTMLTextAreaElement).value;
      this.setState({ ...this.state, draftDocument: value });
    });
    this.q("run-highlight").addEventListener(
      "click", () => void this.runHighlight());
  }

  private update(): void {
    this.updateSessionBar();
    this.updateModels();
    this.updateEntityTable();
    this.updateFeedbackTable();
    this.updateHighlight();
  }

  private updateSessionBar(): void {
    const info = this.state.sessionId
      ? `session "${this.state.sessionName}" (${this.state.sessionId}) — ` +
        `iteration ${this.state.iteration}`
      : "no session";
    this.q("session-info").textContent = info;
  }

  private updateModels(): void {
    const host = this.q("models");
    host.innerHTML = this.models.map((m) => `
      <label><input type="checkbox" data-model="${escapeHtml(m.id)}"
        ${this.state.selectedModels.includes(m.id) ? "checked" : ""}>
        ${escapeHtml(m.id)} <em>(${m.kind})</em></label>`).join(" ");
    host.querySelectorAll("input[data-model]").forEach((node) => {
      node.addEventListener("change", (event) => {
        const box = event.target as HTMLInputElement;
        const id = box.dataset.model as string;
        const selected = box.checked
          ? [...this.state.selectedModels, id]
          : this.state.selectedModels.filter((m) => m !== id);
        this.setState({ ...this.state, selectedModels: selected });
      });
    });
    const kInput = this.q("k-input") as HTMLInputElement;
    if (document.activeElement !== kInput) {
      kInput.value = String(this.state.k);
    }
  }

  private updateEntityTable(): void {
    const head = this.q("entity-head");
    head.innerHTML = "<tr>" + SORTABLE.map((column) => {
      const marker = this.state.sortColumn === column
        ? (this.state.sortDirection === "asc" ? " ▲" : " ▼") : "";
      return `<th data-sort="${column}">${column}${marker}</th>`;
    }).join("") + "<th></th></tr>";
    head.querySelectorAll("th[data-sort]").forEach((th) => {
      th.addEventListener("click", () => {
        const column = (th as HTMLElement).dataset.sort as SortColumn;
        // asc -> desc -> off
        if (this.state.sortColumn !== column) {
          this.setState({ ...this.state, sortColumn: column,
            sortDirection: "asc" });
        } else if (this.state.sortDirection === "asc") {
          this.setState({ ...this.state, sortDirection: "desc" });
        } else {
          this.setState({ ...this.state, sortColumn: null,
            sortDirection: "asc" });
        }
      });
    });

    const view = visibleEntries(this.state.entries, this.state);
    if (view.page !== this.state.page) {
      // page clamped (e.g. after search narrowed the table)
      this.state = { ...this.state, page: view.page };
      saveState(this.storage, this.state);
    }
    const body = this.q("entity-body");
    body.innerHTML = view.rows.map((row) => `
      <tr data-surface="${escapeHtml(row.surface)}"
          class="${row.active ? "" : "inactive"}">
        <td class="surface">${escapeHtml(row.surface)}</td>
        <td class="label ${row.label}">${row.label}</td>
        <td>${row.origin === null ? "" : escapeHtml(row.origin)}</td>
        <td>${row.score === null ? "" : row.score.toFixed(6)}</td>
        <td><input type="checkbox" class="active-toggle"
             ${row.active ? "checked" : ""}></td>
        <td>${row.model === null ? "" : escapeHtml(row.model)}</td>
        <td>${row.iteration}</td>
        <td class="row-actions">
          <input class="rename-input" placeholder="new name">
          <button class="rename-button">rename</button>
          <button class="delete-button">delete</button>
        </td>
      </tr>`).join("");

    body.querySelectorAll("tr").forEach((tr) => {
      const surface = (tr as HTMLElement).dataset.surface as string;
      tr.querySelector(".active-toggle")?.addEventListener("change", (e) => {
        const checked = (e.target as HTMLInputElement).checked;
        void this.setEntityActive(surface, checked);
      });
      tr.querySelector(".delete-button")?.addEventListener("click", () => {
        void this.deleteEntity(surface);
      });
      tr.querySelector(".rename-button")?.addEventListener("click", () => {
        const input = tr.querySelector(".rename-input") as HTMLInputElement;
        if (input.value.trim()) {
          void this.renameEntity(surface, input.value.trim());
        }
      });
    });

    this.q("page-info").textContent =
      `page ${view.page + 1} of ${view.pageCount} (${view.total} entities)`;
    (this.q("prev-page") as HTMLButtonElement).disabled = view.page === 0;
    (this.q("next-page") as HTMLButtonElement).disabled =
      view.page >= view.pageCount - 1;

    const sid = this.state.sessionId;
    const csv = this.q("export-csv") as HTMLAnchorElement;
    const json = this.q("export-json") as HTMLAnchorElement;
    if (sid) {
      csv.href = this.api.exportUrl(sid, "csv");
      json.href = this.api.exportUrl(sid, "json");
    }

    const search = this.q("search") as HTMLInputElement;
    if (document.activeElement !== search) {
      search.value = this.state.search;
    }
  }

  private updateFeedbackTable(): void {
    const body = this.q("feedback-body");
    body.innerHTML = this.state.pending.map((candidate) => {
      const verdict = verdictFor(this.state, candidate.surface);
      const button = (choice: VerdictChoice, text: string) =>
        `<button class="verdict-${choice} ${verdict === choice ? "on" : ""}"
          data-choice="${choice}">${text}</button>`;
      return `
      <tr data-surface="${escapeHtml(candidate.surface)}"
          data-verdict="${verdict}">
        <td>${escapeHtml(candidate.surface)}</td>
        <td>${candidate.score.toFixed(6)}</td>
        <td>${escapeHtml(candidate.origin)}</td>
        <td>${escapeHtml(candidate.model)}</td>
        <td>${button("accept", "+")}${button("reject", "−")}
            ${button("skip", "skip")}</td>
      </tr>`;
    }).join("");

    body.querySelectorAll("tr").forEach((tr) => {
      const surface = (tr as HTMLElement).dataset.surface as string;
      tr.querySelectorAll("button[data-choice]").forEach((btn) => {
        btn.addEventListener("click", () => {
          const choice = (btn as HTMLElement).dataset.choice as VerdictChoice;
          this.setVerdictChoice(surface, choice);
        });
      });
    });

    (this.q("expand") as HTMLButtonElement).disabled =
      this.busy || !this.state.sessionId ||
      this.state.selectedModels.length === 0;
    (this.q("submit-feedback") as HTMLButtonElement).disabled =
      this.busy || this.state.pending.length === 0;
  }

  private updateHighlight(): void {
    const preview = this.q("highlight-preview");
    preview.innerHTML = "";
    const draft = this.state.draftDocument;
    const textarea = this.q("draft") as HTMLTextAreaElement;
    if (document.activeElement !== textarea) {
      textarea.value = draft;
    }
    if (!draft) return;
    let segments;
    try {
      segments = segmentDocument(draft, this.spans);
    } catch {
      segments = [{ text: draft, marked: false }];
    }
    for (const segment of segments) {
      if (segment.marked) {
        const mark = document.createElement("mark");
        mark.textContent = segment.text;
        mark.dataset.entity = segment.surface ?? "";
        preview.appendChild(mark);
      } else {
        preview.appendChild(document.createTextNode(segment.text));
      }
    }
  }
}

export function createApp(root: HTMLElement, options: AppOptions): DashboardApp {
  return new DashboardApp(root, options.api, options.storage);
}

/** Browser entry point: mount on #app against the serving origin. */
export function main(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");
  const base = (window as unknown as { SEEDFORGE_API?: string }).SEEDFORGE_API ?? "";
  createApp(root, {
    api: new SeedforgeApi(base),
    storage: window.localStorage,
  });
}
