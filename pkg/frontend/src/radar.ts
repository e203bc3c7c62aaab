/**
 * Twelve-spoke radar chart as an SVG string.
 *
 * Pure function of its input: no DOM access, so it renders identically in
 * tests and in the browser.  Display values are clamped to [0, 100] for
 * geometry; the unclamped raw score is preserved in each vertex tooltip.
 */

import { AXIS_COUNT, AXIS_GROUPS, RadarPayload, SchemaError } from "./types.js";

export interface RadarSeries {
  label: string;
  radar: RadarPayload;
}

export const MAX_OVERLAY = 4;

const SIZE = 460;
const CENTER = SIZE / 2;
const RADIUS = 160;
const COLORS = ["#2563eb", "#dc2626", "#059669", "#d97706"];

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function fmt(value: number): string {
  return Number(value.toFixed(2)).toString();
}

function angle(index: number): number {
  return ((index * 360) / AXIS_COUNT - 90) * (Math.PI / 180);
}

function point(index: number, value: number): [number, number] {
  const clamped = Math.max(0, Math.min(100, value));
  const r = (RADIUS * clamped) / 100;
  return [CENTER + r * Math.cos(angle(index)), CENTER + r * Math.sin(angle(index))];
}

function ring(fraction: number): string {
  const pts = Array.from({ length: AXIS_COUNT }, (_, i) => {
    const [x, y] = point(i, fraction * 100);
    return `${x.toFixed(1)},${y.toFixed(1)}`;
  }).join(" ");
  return `<polygon points="${pts}" fill="none" stroke="#d4d4d8" stroke-width="1"/>`;
}

function spokesAndLabels(axes: string[]): string {
  const parts: string[] = [];
  for (let i = 0; i < AXIS_COUNT; i++) {
    const [x, y] = point(i, 100);
    parts.push(
      `<line x1="${CENTER}" y1="${CENTER}" x2="${x.toFixed(1)}" y2="${y.toFixed(1)}" stroke="#e4e4e7"/>`,
    );
    const [lx, ly] = [
      CENTER + (RADIUS + 16) * Math.cos(angle(i)),
      CENTER + (RADIUS + 16) * Math.sin(angle(i)),
    ];
    parts.push(
      `<text x="${lx.toFixed(1)}" y="${ly.toFixed(1)}" font-size="12" text-anchor="middle" dominant-baseline="middle">${escapeXml(axes[i])}</text>`,
    );
  }
  let offset = 0;
  for (const [group, members] of AXIS_GROUPS) {
    const mid = offset + (members.length - 1) / 2;
    const a = angle(mid);
    const gx = CENTER + (RADIUS + 42) * Math.cos(a);
    const gy = CENTER + (RADIUS + 42) * Math.sin(a);
    parts.push(
      `<text x="${gx.toFixed(1)}" y="${gy.toFixed(1)}" font-size="11" fill="#71717a" text-anchor="middle" dominant-baseline="middle" class="axis-group">${escapeXml(group)}</text>`,
    );
    offset += members.length;
  }
  return parts.join("");
}

function seriesPolygon(series: RadarSeries, color: string): string {
  const { axes, raw, display } = series.radar;
  const pts: string[] = [];
  const vertices: string[] = [];
  for (let i = 0; i < AXIS_COUNT; i++) {
    const [x, y] = point(i, display[i]);
    pts.push(`${x.toFixed(1)},${y.toFixed(1)}`);
    const title = `${series.label} ${axes[i]}: ${fmt(raw[i])} (shown ${fmt(Math.max(0, Math.min(100, display[i])))})`;
    vertices.push(
      `<circle cx="${x.toFixed(1)}" cy="${y.toFixed(1)}" r="3.5" fill="${color}"><title>${escapeXml(title)}</title></circle>`,
    );
  }
  return (
    `<polygon points="${pts.join(" ")}" fill="${color}22" stroke="${color}" stroke-width="2"/>` +
    vertices.join("")
  );
}

function legend(series: RadarSeries[]): string {
  const items = series
    .map((s, i) => {
      const y = 18 + i * 18;
      return (
        `<rect x="12" y="${y - 9}" width="10" height="10" fill="${COLORS[i]}"/>` +
        `<text x="28" y="${y}" font-size="12" dominant-baseline="middle" class="legend-label">${escapeXml(s.label)}</text>`
      );
    })
    .join("");
  return `<g class="legend">${items}</g>`;
}

/**
 * Render an overlay of up to four score profiles.  Throws SchemaError on a
 * malformed payload (wrong axis count, mismatched arrays) or too many series.
 */
export function renderRadar(series: RadarSeries[]): string {
  if (series.length === 0) {
    return `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${SIZE} 80" class="radar radar-empty"><text x="${CENTER}" y="40" text-anchor="middle" fill="#71717a">no profile selected</text></svg>`;
  }
  if (series.length > MAX_OVERLAY) {
    throw new SchemaError(`radar overlay supports at most ${MAX_OVERLAY} teams`);
  }
  for (const s of series) {
    const { axes, raw, display } = s.radar;
    if (axes.length !== AXIS_COUNT || raw.length !== AXIS_COUNT || display.length !== AXIS_COUNT) {
      throw new SchemaError("radar payload must carry exactly 12 axes");
    }
  }
  const axes = series[0].radar.axes;
  const body =
    [0.25, 0.5, 0.75, 1.0].map(ring).join("") +
    spokesAndLabels(axes) +
    series.map((s, i) => seriesPolygon(s, COLORS[i])).join("") +
    legend(series);
  return `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${SIZE} ${SIZE}" class="radar" role="img">${body}</svg>`;
}
