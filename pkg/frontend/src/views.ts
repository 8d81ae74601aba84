/** Pure view transforms for the entity table: search, sort, pagination.
 *
 * These never mutate their inputs — applying a transform and then undoing
 * it renders exactly what an untouched table would.
 */

import type { EntryRow } from "./types.js";
import type { SortColumn, SortDirection } from "./state.js";

export function searchRows(rows: EntryRow[], query: string): EntryRow[] {
  const needle = query.trim().toLowerCase();
  if (!needle) return rows.slice();
  return rows.filter((row) => row.surface.toLowerCase().includes(needle));
}

function compareValues(a: unknown, b: unknown): number {
  // nulls (absent origin/score/model) sort after everything else
  if (a === null && b === null) return 0;
  if (a === null) return 1;
  if (b === null) return -1;
  if (typeof a === "string" && typeof b === "string") {
    const la = a.toLowerCase();
    const lb = b.toLowerCase();
    return la < lb ? -1 : la > lb ? 1 : 0;
  }
  if (typeof a === "boolean" && typeof b === "boolean") {
    return Number(b) - Number(a); // active rows first in ascending order
  }
  return (a as number) - (b as number);
}

export function sortRows(
  rows: EntryRow[],
  column: SortColumn | null,
  direction: SortDirection,
): EntryRow[] {
  const copy = rows.slice();
  if (column === null) return copy;
  const sign = direction === "desc" ? -1 : 1;
  // Array.prototype.sort is stable, so equal keys keep insertion order.
  copy.sort((a, b) => sign * compareValues(a[column], b[column]));
  return copy;
}

export interface PageView<T> {
  rows: T[];
  page: number;
  pageCount: number;
  total: number;
}

export function paginate<T>(rows: T[], page: number, pageSize: number): PageView<T> {
  const size = Math.max(1, Math.floor(pageSize));
  const pageCount = Math.max(1, Math.ceil(rows.length / size));
  const clamped = Math.min(Math.max(0, Math.floor(page)), pageCount - 1);
  return {
    rows: rows.slice(clamped * size, (clamped + 1) * size),
    page: clamped,
    pageCount,
    total: rows.length,
  };
}

/** search -> sort -> paginate, the entity table's full pipeline. */
export function visibleEntries(
  rows: EntryRow[],
  options: {
    search: string;
    sortColumn: SortColumn | null;
    sortDirection: SortDirection;
    page: number;
    pageSize: number;
  },
): PageView<EntryRow> {
  const filtered = searchRows(rows, options.search);
  const sorted = sortRows(filtered, options.sortColumn, options.sortDirection);
  return paginate(sorted, options.page, options.pageSize);
}
