/**
 * Leaderboard table renderer.  Rows appear exactly in server order — ranking
 * is the referee's job, and reordering client-side could silently disagree
 * with it.
 */

import { LeaderboardResponse, SchemaError } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function fmt(value: number): string {
  return Number(value.toFixed(2)).toString();
}

export function renderLeaderboardTable(board: LeaderboardResponse, overlay: string[]): string {
  if (board.entries.length === 0) {
    return `<p class="empty-state">no submissions yet</p>`;
  }
  const axes = board.entries[0].radar.axes;
  const head =
    `<tr><th></th><th>#</th><th>team</th><th>composite</th>` +
    axes.map((a) => `<th class="score-col">${escapeHtml(a)}</th>`).join("") +
    `<th>subs</th><th>latest</th><th>code</th></tr>`;
  const rows = board.entries
    .map((entry) => {
      if (entry.radar.display.length !== axes.length) {
        throw new SchemaError(`entry ${entry.team_id}: ragged display scores`);
      }
      const checked = overlay.includes(entry.team_id) ? " checked" : "";
      const cells = entry.radar.display
        .map(
          (v, i) =>
            `<td class="score-col" title="${escapeHtml(axes[i])} raw ${fmt(entry.radar.raw[i])}">${fmt(v)}</td>`,
        )
        .join("");
      return (
        `<tr data-team="${escapeHtml(entry.team_id)}">` +
        `<td><input type="checkbox" data-overlay="${escapeHtml(entry.team_id)}"${checked} aria-label="overlay ${escapeHtml(entry.display_name)}"></td>` +
        `<td>${entry.rank}</td>` +
        `<td class="team">${escapeHtml(entry.display_name)}</td>` +
        `<td class="composite">${fmt(entry.composite)}</td>` +
        cells +
        `<td>${entry.submission_count}</td>` +
        `<td class="latest">${escapeHtml(entry.latest)}</td>` +
        `<td><a href="${escapeHtml(entry.github_url)}" rel="noopener" target="_blank">repo</a></td>` +
        `</tr>`
      );
    })
    .join("");
  return `<table class="leaderboard"><thead>${head}</thead><tbody>${rows}</tbody></table>`;
}

export function renderErrorCard(title: string, message: string): string {
  return (
    `<div class="error-card" role="alert"><strong>${escapeHtml(title)}</strong>` +
    `<p>${escapeHtml(message)}</p></div>`
  );
}

export function renderStaleBanner(lastUpdated: string | null): string {
  const since = lastUpdated ? ` — showing data from ${escapeHtml(lastUpdated)}` : "";
  return `<div class="stale-banner" role="status">leaderboard may be stale: last poll failed${since}</div>`;
}
