/**
 * Wire types for the referee API, plus strict parsers.
 *
 * The UI is defensive: everything fetched goes through a parser that throws
 * SchemaError (or SchemaVersionError for a version the UI does not speak)
 * instead of letting malformed payloads reach the renderers.
 */

export const SUPPORTED_SCHEMA_VERSION = 1;
export const AXIS_COUNT = 12;

/** Axis groups in display order; axes are E1..E12. */
export const AXIS_GROUPS: ReadonlyArray<readonly [string, readonly string[]]> = [
  ["Forecast", ["E1", "E2"]],
  ["Noise", ["E3", "E4", "E5", "E6"]],
  ["Limited", ["E7", "E8", "E9", "E10"]],
  ["Parametric", ["E11", "E12"]],
];

export interface RadarPayload {
  axes: string[];
  raw: number[];
  display: number[];
  composite: number;
}

export interface LeaderboardEntry {
  rank: number;
  team_id: string;
  display_name: string;
  composite: number;
  scores: number[];
  github_url: string;
  submission_count: number;
  latest: string;
  radar: RadarPayload;
}

export interface LeaderboardResponse {
  version: number;
  pack_id: string;
  entries: LeaderboardEntry[];
}

export interface ChallengeInfo {
  pack_id: string;
  system: string;
}

export class SchemaError extends Error {}

export class SchemaVersionError extends SchemaError {
  constructor(public readonly got: unknown) {
    super(`server speaks schema version ${String(got)}, this UI expects ${SUPPORTED_SCHEMA_VERSION}`);
  }
}

function asRecord(value: unknown, where: string): Record<string, unknown> {
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    throw new SchemaError(`${where}: expected an object`);
  }
  return value as Record<string, unknown>;
}

function asString(value: unknown, where: string): string {
  if (typeof value !== "string") throw new SchemaError(`${where}: expected a string`);
  return value;
}

function asNumber(value: unknown, where: string): number {
  if (typeof value !== "number" || !Number.isFinite(value)) {
    throw new SchemaError(`${where}: expected a finite number`);
  }
  return value;
}

function asNumberArray(value: unknown, length: number, where: string): number[] {
  if (!Array.isArray(value) || value.length !== length) {
    throw new SchemaError(`${where}: expected ${length} numbers`);
  }
  return value.map((v, i) => asNumber(v, `${where}[${i}]`));
}

export function parseRadar(value: unknown, where = "radar"): RadarPayload {
  const record = asRecord(value, where);
  const axes = record.axes;
  if (!Array.isArray(axes) || axes.length !== AXIS_COUNT) {
    throw new SchemaError(`${where}.axes: expected ${AXIS_COUNT} axis labels`);
  }
  return {
    axes: axes.map((a, i) => asString(a, `${where}.axes[${i}]`)),
    raw: asNumberArray(record.raw, AXIS_COUNT, `${where}.raw`),
    display: asNumberArray(record.display, AXIS_COUNT, `${where}.display`),
    composite: asNumber(record.composite, `${where}.composite`),
  };
}

function parseEntry(value: unknown, where: string): LeaderboardEntry {
  const record = asRecord(value, where);
  return {
    rank: asNumber(record.rank, `${where}.rank`),
    team_id: asString(record.team_id, `${where}.team_id`),
    display_name: asString(record.display_name, `${where}.display_name`),
    composite: asNumber(record.composite, `${where}.composite`),
    scores: asNumberArray(record.scores, AXIS_COUNT, `${where}.scores`),
    github_url: asString(record.github_url, `${where}.github_url`),
    submission_count: asNumber(record.submission_count, `${where}.submission_count`),
    latest: asString(record.latest, `${where}.latest`),
    radar: parseRadar(record.radar, `${where}.radar`),
  };
}

export function parseLeaderboard(value: unknown): LeaderboardResponse {
  const record = asRecord(value, "leaderboard");
  if (record.version !== SUPPORTED_SCHEMA_VERSION) {
    throw new SchemaVersionError(record.version);
  }
  const entries = record.entries;
  if (!Array.isArray(entries)) throw new SchemaError("leaderboard.entries: expected an array");
  return {
    version: SUPPORTED_SCHEMA_VERSION,
    pack_id: asString(record.pack_id, "leaderboard.pack_id"),
    entries: entries.map((e, i) => parseEntry(e, `entries[${i}]`)),
  };
}

export function parseChallenges(value: unknown): ChallengeInfo[] {
  if (!Array.isArray(value)) throw new SchemaError("challenges: expected an array");
  return value.map((c, i) => {
    const record = asRecord(c, `challenges[${i}]`);
    return {
      pack_id: asString(record.pack_id, `challenges[${i}].pack_id`),
      system: asString(record.system, `challenges[${i}].system`),
    };
  });
}
