/** Draft persistence in browser local storage.
 *
 * The whole UiState (server mirror included) is cached so a page reload
 * restores the working view — table, pending candidates with their verdict
 * selections, draft document — without waiting on the network.
 */

import { initialState, type UiState } from "./state.js";

export const STORAGE_KEY = "seedforge.dashboard.state";

export interface KeyValueStorage {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

export function saveState(storage: KeyValueStorage, state: UiState): void {
  storage.setItem(STORAGE_KEY, JSON.stringify(state));
}

export function loadState(storage: KeyValueStorage): UiState {
  const raw = storage.getItem(STORAGE_KEY);
  if (raw === null) return initialState();
  let parsed: unknown;
  try {
    parsed = JSON.parse(raw);
  } catch {
    return initialState();
  }
  if (typeof parsed !== "object" || parsed === null) return initialState();
  // tolerate missing keys from older drafts: defaults fill the gaps
  return { ...initialState(), ...(parsed as Partial<UiState>) };
}

export function clearState(storage: KeyValueStorage): void {
  storage.removeItem(STORAGE_KEY);
}

/** In-memory stand-in used by tests and non-browser environments. */
export class MemoryStorage implements KeyValueStorage {
  private data = new Map<string, string>();

  getItem(key: string): string | null {
    return this.data.has(key) ? (this.data.get(key) as string) : null;
  }

  setItem(key: string, value: string): void {
    this.data.set(key, value);
  }

  removeItem(key: string): void {
    this.data.delete(key);
  }
}
