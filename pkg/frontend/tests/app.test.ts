import { afterEach, describe, expect, it } from "vitest";

import { SeedforgeApi } from "../src/api.js";
import { createApp, type DashboardApp } from "../src/app.js";
import { MemoryStorage } from "../src/persistence.js";
import { fakeServer, type FakeServer } from "./fakeServer.js";

function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

interface Mounted {
  root: HTMLElement;
  app: DashboardApp;
  server: FakeServer;
  storage: MemoryStorage;
}

const mounted: HTMLElement[] = [];

function mount(server?: FakeServer, storage?: MemoryStorage): Mounted {
  const srv = server ?? fakeServer();
  const store = storage ?? new MemoryStorage();
  const root = document.createElement("div");
  document.body.appendChild(root);
  mounted.push(root);
  const app = createApp(root, {
    api: new SeedforgeApi("http://fake", srv.fetchFn),
    storage: store,
  });
  return { root, app, server: srv, storage: store };
}

afterEach(() => {
  for (const root of mounted.splice(0)) root.remove();
});

function q<T extends HTMLElement>(root: HTMLElement, testId: string): T {
  const el = root.querySelector(`[data-testid="${testId}"]`);
  if (!el) throw new Error(`missing ${testId}`);
  return el as T;
}

function entityRows(root: HTMLElement): HTMLTableRowElement[] {
  return Array.from(q(root, "entity-body").querySelectorAll("tr"));
}

function feedbackRows(root: HTMLElement): HTMLTableRowElement[] {
  return Array.from(q(root, "feedback-body").querySelectorAll("tr"));
}

describe("inactivation", () => {
  it("round-trips through the API and re-renders from the response", async () => {
    const { root, app, server } = mount();
    await app.ready;
    await app.createSession("t");
    await app.addEntity("bath", "positive");

    const row = entityRows(root)[0] as HTMLTableRowElement;
    expect(row.classList.contains("inactive")).toBe(false);
    const toggle = row.querySelector(".active-toggle") as HTMLInputElement;
    toggle.checked = false;
    toggle.dispatchEvent(new Event("change"));
    await flush();

    const patches = server.calls.filter((c) => c.method === "PATCH");
    expect(patches).toHaveLength(1);
    expect(patches[0]?.body).toEqual({ active: false });

    // server state flipped, and the re-render reflects the server copy
    const session = server.sessions.get(app.state.sessionId as string);
    expect(session?.entries[0]?.active).toBe(false);
    const rerendered = entityRows(root)[0] as HTMLTableRowElement;
    expect(rerendered.classList.contains("inactive")).toBe(true);

    // ... and back on
    const toggle2 = rerendered.querySelector(".active-toggle") as HTMLInputElement;
    toggle2.checked = true;
    toggle2.dispatchEvent(new Event("change"));
    await flush();
    expect(session?.entries[0]?.active).toBe(true);
    expect(entityRows(root)[0]?.classList.contains("inactive")).toBe(false);
  });

  it("duplicate add shows an inline error and adds no row", async () => {
    const { root, app } = mount();
    await app.ready;
    await app.createSession("t");
    await app.addEntity("bath", "positive");
    await app.addEntity("Bath", "positive");
    const error = q(root, "add-error");
    expect(error.hidden).toBe(false);
    expect(error.textContent).toContain("duplicate");
    expect(entityRows(root)).toHaveLength(1);
  });
});

describe("expand and feedback", () => {
  it("fills the feedback table from the server response", async () => {
    const { root, app } = mount();
    await app.ready;
    await app.createSession("t");
    await app.addEntity("bath", "positive");
    await app.expand();

    const rows = feedbackRows(root);
    expect(rows.length).toBe(4);
    const first = rows[0] as HTMLTableRowElement;
    expect(first.dataset.surface).toBe("granite");
    expect(first.dataset.verdict).toBe("skip"); // default verdict
    expect(first.textContent).toContain("0.910000");
    expect(first.textContent).toContain("emb:fake");
  });

  it("submits exactly the non-skip verdicts and clears the table", async () => {
    const { root, app, server } = mount();
    await app.ready;
    await app.createSession("t");
    await app.addEntity("bath", "positive");
    await app.expand();

    const rows = feedbackRows(root);
    (rows[0]?.querySelector(".verdict-accept") as HTMLButtonElement).click();
    await flush();
    (feedbackRows(root)[2]?.querySelector(".verdict-reject") as
      HTMLButtonElement).click();
    await flush();

    q<HTMLButtonElement>(root, "submit-feedback").click();
    await flush();

    const feedbackCalls = server.calls.filter(
      (c) => c.path.endsWith("/feedback"));
    expect(feedbackCalls).toHaveLength(1);
    expect(feedbackCalls[0]?.body).toEqual({
      decisions: [
        { surface: "granite", verdict: "accept" },
        { surface: "slate", verdict: "reject" },
      ],
    });

    // table cleared, entity table refreshed from the server
    expect(feedbackRows(root)).toHaveLength(0);
    const surfaces = entityRows(root).map(
      (tr) => tr.querySelector(".surface")?.textContent);
    expect(surfaces).toEqual(["bath", "granite", "slate"]);
    const labels = entityRows(root).map(
      (tr) => tr.querySelector(".label")?.textContent);
    expect(labels).toEqual(["positive", "positive", "negative"]);
  });

  it("disables the expand button while a request is in flight", async () => {
    const server = fakeServer();
    let release: (() => void) | null = null;
    const gated: typeof server.fetchFn = async (input, init) => {
      if (String(input).endsWith("/expand")) {
        await new Promise<void>((resolve) => { release = resolve; });
      }
      return server.fetchFn(input, init);
    };
    const root = document.createElement("div");
    document.body.appendChild(root);
    mounted.push(root);
    const app = createApp(root, {
      api: new SeedforgeApi("http://fake", gated),
      storage: new MemoryStorage(),
    });
    await app.ready;
    await app.createSession("t");
    await app.addEntity("bath", "positive");

    const expandButton = q<HTMLButtonElement>(root, "expand");
    expect(expandButton.disabled).toBe(false);
    const pendingExpand = app.expand();
    await flush();
    expect(expandButton.disabled).toBe(true);
    (release as unknown as () => void)();
    await pendingExpand;
    expect(expandButton.disabled).toBe(false);
  });
});

describe("view transforms", () => {
  async function seeded(count: number): Promise<Mounted> {
    const m = mount();
    await m.app.ready;
    await m.app.createSession("t");
    const seeds = Array.from({ length: count }, (_, i) =>
      `e${String(i).padStart(2, "0")}`);
    // shuffle so insertion order is not already sorted
    seeds.reverse();
    await m.app.importContent(seeds.join("\n"), "seeds");
    return m;
  }

  it("sorting toggles asc, desc, off and never mutates the data", async () => {
    const { root, app } = await seeded(4);
    const original = entityRows(root).map(
      (tr) => tr.querySelector(".surface")?.textContent);
    const header = () => q(root, "entity-head")
      .querySelector('th[data-sort="surface"]') as HTMLElement;

    header().click();
    await flush();
    const ascending = entityRows(root).map(
      (tr) => tr.querySelector(".surface")?.textContent);
    expect(ascending).toEqual([...original].sort());

    header().click();
    await flush();
    const descending = entityRows(root).map(
      (tr) => tr.querySelector(".surface")?.textContent);
    expect(descending).toEqual([...original].sort().reverse());

    header().click();
    await flush();
    expect(entityRows(root).map(
      (tr) => tr.querySelector(".surface")?.textContent)).toEqual(original);

    // the underlying mirror kept the server's insertion order throughout
    expect(app.state.entries.map((e) => e.surface)).toEqual(original);
  });

  it("search filters case-insensitively and clears back", async () => {
    const { root } = await seeded(4);
    const original = entityRows(root).length;
    const search = q<HTMLInputElement>(root, "search");
    search.value = "E01";
    search.dispatchEvent(new Event("input"));
    await flush();
    expect(entityRows(root)).toHaveLength(1);
    search.value = "";
    search.dispatchEvent(new Event("input"));
    await flush();
    expect(entityRows(root)).toHaveLength(original);
  });

  it("paginates at 25 per page and clamps", async () => {
    const { root } = await seeded(30);
    expect(entityRows(root)).toHaveLength(25);
    expect(q(root, "page-info").textContent).toContain("page 1 of 2");
    q<HTMLButtonElement>(root, "next-page").click();
    await flush();
    expect(entityRows(root)).toHaveLength(5);
    q<HTMLButtonElement>(root, "prev-page").click();
    await flush();
    expect(entityRows(root)).toHaveLength(25);
  });
});

describe("highlight view", () => {
  it("marks active positives and re-renders after feedback", async () => {
    const { root, app } = mount();
    await app.ready;
    await app.createSession("t");
    await app.addEntity("bath", "positive");

    const draft = q<HTMLTextAreaElement>(root, "draft");
    draft.value = "a bath with granite walls";
    draft.dispatchEvent(new Event("change"));
    q<HTMLButtonElement>(root, "run-highlight").click();
    await flush();

    let marks = Array.from(q(root, "highlight-preview").querySelectorAll("mark"));
    expect(marks.map((m) => m.textContent)).toEqual(["bath"]);

    // accept "granite"; the preview refreshes without another click
    await app.expand();
    app.setVerdictChoice("granite", "accept");
    q<HTMLButtonElement>(root, "submit-feedback").click();
    await flush();
    await flush();

    marks = Array.from(q(root, "highlight-preview").querySelectorAll("mark"));
    expect(marks.map((m) => m.textContent)).toEqual(["bath", "granite"]);
  });
});

describe("offline draft persistence", () => {
  it("state survives a simulated page reload", async () => {
    const server = fakeServer();
    const storage = new MemoryStorage();
    const first = mount(server, storage);
    await first.app.ready;
    await first.app.createSession("persist");
    await first.app.addEntity("bath", "positive");
    await first.app.expand();
    first.app.setVerdictChoice("granite", "accept");

    const draft = q<HTMLTextAreaElement>(first.root, "draft");
    draft.value = "unsent draft text";
    draft.dispatchEvent(new Event("change"));
    await flush();

    const sessionId = first.app.state.sessionId;
    first.root.remove(); // simulated tab close

    const second = mount(server, storage);
    await second.app.ready;

    // same session, same table, same pending candidates and verdicts
    expect(second.app.state.sessionId).toBe(sessionId);
    expect(entityRows(second.root).map(
      (tr) => tr.querySelector(".surface")?.textContent)).toEqual(["bath"]);
    expect(feedbackRows(second.root)).toHaveLength(4);
    expect(feedbackRows(second.root)[0]?.dataset.verdict).toBe("accept");
    expect(q<HTMLTextAreaElement>(second.root, "draft").value)
      .toBe("unsent draft text");
    expect(second.app.state.k).toBe(first.app.state.k);
  });
});
