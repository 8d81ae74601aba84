import { describe, expect, it } from "vitest";

import { paginate, searchRows, sortRows, visibleEntries } from "../src/views.js";
import type { EntryRow } from "../src/types.js";

function entry(surface: string, over: Partial<EntryRow> = {}): EntryRow {
  return {
    surface,
    label: "positive",
    origin: null,
    score: null,
    active: true,
    model: null,
    iteration: 0,
    ...over,
  };
}

const rows = [
  entry("sauna", { score: 0.5 }),
  entry("Kitchen", { score: 0.9 }),
  entry("bath", { active: false }),
  entry("kit", { label: "negative" }),
];

describe("searchRows", () => {
  it("filters case-insensitively on the surface", () => {
    const hits = searchRows(rows, "kit");
    expect(hits.map((r) => r.surface)).toEqual(["Kitchen", "kit"]);
  });

  it("returns everything for a blank query", () => {
    expect(searchRows(rows, "  ")).toEqual(rows);
  });

  it("never mutates its input", () => {
    const before = rows.slice();
    searchRows(rows, "kit");
    expect(rows).toEqual(before);
  });
});

describe("sortRows", () => {
  it("sorts by surface ascending, case-insensitively", () => {
    const sorted = sortRows(rows, "surface", "asc");
    expect(sorted.map((r) => r.surface)).toEqual(
      ["bath", "kit", "Kitchen", "sauna"]);
  });

  it("descending reverses the comparison", () => {
    const sorted = sortRows(rows, "surface", "desc");
    expect(sorted.map((r) => r.surface)).toEqual(
      ["sauna", "Kitchen", "kit", "bath"]);
  });

  it("null scores sort after present scores", () => {
    const sorted = sortRows(rows, "score", "asc");
    expect(sorted.map((r) => r.score)).toEqual([0.5, 0.9, null, null]);
  });

  it("no column means original order", () => {
    expect(sortRows(rows, null, "asc")).toEqual(rows);
  });

  it("is a pure transform: input order is untouched", () => {
    const before = rows.map((r) => r.surface);
    sortRows(rows, "surface", "desc");
    expect(rows.map((r) => r.surface)).toEqual(before);
  });
});

describe("paginate", () => {
  const many = Array.from({ length: 26 }, (_, i) => entry(`e${i}`));

  it("slices by page", () => {
    const view = paginate(many, 1, 10);
    expect(view.rows.map((r) => r.surface)).toEqual(
      many.slice(10, 20).map((r) => r.surface));
    expect(view.pageCount).toBe(3);
    expect(view.total).toBe(26);
  });

  it("clamps out-of-range pages", () => {
    expect(paginate(many, 99, 10).page).toBe(2);
    expect(paginate(many, -1, 10).page).toBe(0);
  });

  it("enforces page size >= 1", () => {
    expect(paginate(many, 0, 0).rows.length).toBe(1);
  });

  it("empty input still has one page", () => {
    const view = paginate([], 0, 25);
    expect(view.pageCount).toBe(1);
    expect(view.rows).toEqual([]);
  });
});

describe("visibleEntries round trip", () => {
  it("toggling transforms on and back restores the original rendering", () => {
    const base = {
      search: "",
      sortColumn: null,
      sortDirection: "asc" as const,
      page: 0,
      pageSize: 25,
    };
    const before = visibleEntries(rows, base);

    // search on, sort on, page forward... then everything back off
    visibleEntries(rows, { ...base, search: "kit" });
    visibleEntries(rows, { ...base, sortColumn: "surface" });
    visibleEntries(rows, { ...base, page: 3 });
    const after = visibleEntries(rows, base);

    expect(after).toEqual(before);
    expect(after.rows.map((r) => r.surface)).toEqual(
      ["sauna", "Kitchen", "bath", "kit"]);
  });
});
