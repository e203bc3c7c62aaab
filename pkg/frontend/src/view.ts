/**
 * Whole-page view state and its renderer.
 *
 * renderApp is a pure function of UiState; the app shell (app.ts) owns the
 * state, feeds fetched JSON through the parsers, and re-renders.  Keeping
 * every branch — empty board, stale data, schema mismatch, malformed payload
 * — in this one function makes all of them snapshot-testable without a DOM.
 */

import { renderErrorCard, renderLeaderboardTable, renderStaleBanner, escapeHtml } from "./leaderboard.js";
import { MAX_OVERLAY, RadarSeries, renderRadar } from "./radar.js";
import { ChallengeInfo, LeaderboardResponse, SchemaError } from "./types.js";

export interface UiState {
  packs: ChallengeInfo[];
  selectedPack: string | null;
  board: LeaderboardResponse | null;
  overlay: string[];
  stale: boolean;
  lastUpdated: string | null;
  error: { title: string; message: string } | null;
}

export function initialState(): UiState {
  return {
    packs: [],
    selectedPack: null,
    board: null,
    overlay: [],
    stale: false,
    lastUpdated: null,
    error: null,
  };
}

/** Teams drawn in the radar: explicit overlay selection, else the leader. */
export function radarSeries(state: UiState): RadarSeries[] {
  if (!state.board) return [];
  const chosen = state.board.entries.filter((e) => state.overlay.includes(e.team_id));
  const shown = chosen.length > 0 ? chosen : state.board.entries.slice(0, 1);
  return shown.slice(0, MAX_OVERLAY).map((e) => ({ label: e.display_name, radar: e.radar }));
}

export function toggleOverlay(state: UiState, teamId: string): UiState {
  const overlay = state.overlay.includes(teamId)
    ? state.overlay.filter((t) => t !== teamId)
    : [...state.overlay, teamId].slice(-MAX_OVERLAY);
  return { ...state, overlay };
}

function packSelector(state: UiState): string {
  const options = state.packs
    .map((p) => {
      const selected = p.pack_id === state.selectedPack ? " selected" : "";
      return `<option value="${escapeHtml(p.pack_id)}"${selected}>${escapeHtml(p.system)} — ${escapeHtml(p.pack_id)}</option>`;
    })
    .join("");
  return `<select id="pack-select" aria-label="challenge">${options}</select>`;
}

export function renderApp(state: UiState): string {
  const parts: string[] = [`<header><h1>challenge leaderboard</h1>${packSelector(state)}</header>`];
  if (state.stale) {
    parts.push(renderStaleBanner(state.lastUpdated));
  }
  if (state.error) {
    parts.push(renderErrorCard(state.error.title, state.error.message));
    return parts.join("");
  }
  if (!state.board) {
    parts.push(`<p class="empty-state">loading…</p>`);
    return parts.join("");
  }
  try {
    parts.push(`<section class="board">${renderLeaderboardTable(state.board, state.overlay)}</section>`);
    parts.push(`<section class="profile">${renderRadar(radarSeries(state))}</section>`);
  } catch (err) {
    // A payload that passed parsing but still trips a renderer must show an
    // error card, never a blank page or an exception.
    const message = err instanceof SchemaError ? err.message : String(err);
    return parts.concat(renderErrorCard("cannot render leaderboard", message)).join("");
  }
  if (state.lastUpdated) {
    parts.push(`<footer>updated ${escapeHtml(state.lastUpdated)}</footer>`);
  }
  return parts.join("");
}
