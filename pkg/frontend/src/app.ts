/**
 * Browser shell: owns UiState, polls the referee, re-renders on change.
 *
 * Strictly read-only (GETs via api.ts).  A failed poll flags the view as
 * stale but keeps the last good data; navigation away cancels the loop.
 */

import { fetchChallenges, fetchLeaderboard, FetchLike } from "./api.js";
import { SchemaError, SchemaVersionError } from "./types.js";
import { UiState, initialState, renderApp, toggleOverlay } from "./view.js";

export const DEFAULT_POLL_MS = 5000;

export class LeaderboardApp {
  state: UiState = initialState();
  private timer: ReturnType<typeof setTimeout> | null = null;
  private stopped = false;

  constructor(
    private readonly root: { innerHTML: string },
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike,
    private readonly pollMs: number = DEFAULT_POLL_MS,
  ) {}

  render(): void {
    this.root.innerHTML = renderApp(this.state);
  }

  async start(): Promise<void> {
    try {
      const packs = await fetchChallenges(this.baseUrl, this.fetchImpl);
      this.state = { ...this.state, packs, selectedPack: packs[0]?.pack_id ?? null };
    } catch (err) {
      this.state = { ...this.state, error: describe(err) };
      this.render();
      return;
    }
    await this.refresh();
    this.scheduleNext();
  }

  stop(): void {
    this.stopped = true;
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
  }

  async selectPack(packId: string): Promise<void> {
    this.state = { ...this.state, selectedPack: packId, board: null, overlay: [], error: null };
    this.render();
    await this.refresh();
  }

  handleOverlayToggle(teamId: string): void {
    this.state = toggleOverlay(this.state, teamId);
    this.render();
  }

  async refresh(): Promise<void> {
    const packId = this.state.selectedPack;
    if (!packId) {
      this.render();
      return;
    }
    try {
      const board = await fetchLeaderboard(this.baseUrl, packId, this.fetchImpl);
      this.state = {
        ...this.state,
        board,
        stale: false,
        error: null,
        lastUpdated: new Date().toISOString(),
      };
    } catch (err) {
      if (err instanceof SchemaError) {
        // Version mismatch or malformed payload: error card, keep polling.
        this.state = { ...this.state, error: describe(err) };
      } else {
        this.state = { ...this.state, stale: true };
      }
    }
    this.render();
  }

  private scheduleNext(): void {
    if (this.stopped) return;
    this.timer = setTimeout(async () => {
      await this.refresh();
      this.scheduleNext();
    }, this.pollMs);
  }
}

function describe(err: unknown): { title: string; message: string } {
  if (err instanceof SchemaVersionError) {
    return { title: "schema version mismatch", message: err.message };
  }
  if (err instanceof SchemaError) {
    return { title: "malformed server payload", message: err.message };
  }
  return { title: "cannot reach referee", message: String(err) };
}

/** Resolve the API base URL: ?api=… beats <meta name="api-base">, else same origin. */
export function resolveBaseUrl(location: { search: string; origin: string }, meta: string | null): string {
  const fromQuery = new URLSearchParams(location.search).get("api");
  return (fromQuery ?? meta ?? location.origin).replace(/\/+$/, "");
}

export function bootstrap(doc: Document, win: Window): LeaderboardApp {
  const root = doc.getElementById("app");
  if (!root) throw new Error("missing #app container");
  const meta = doc.querySelector('meta[name="api-base"]')?.getAttribute("content") ?? null;
  const app = new LeaderboardApp(
    root,
    resolveBaseUrl(win.location, meta),
    (url) => win.fetch(url),
  );
  root.addEventListener("change", (event) => {
    const target = event.target as HTMLElement | null;
    if (!target) return;
    if (target.id === "pack-select") {
      void app.selectPack((target as HTMLSelectElement).value);
    } else if (target.dataset && target.dataset.overlay) {
      app.handleOverlayToggle(target.dataset.overlay);
    }
  });
  win.addEventListener("pagehide", () => app.stop());
  void app.start();
  return app;
}

declare const window: (Window & typeof globalThis) | undefined;
if (typeof window !== "undefined" && typeof document !== "undefined") {
  bootstrap(document, window);
}
