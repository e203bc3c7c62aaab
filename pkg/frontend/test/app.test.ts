import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { LeaderboardApp, resolveBaseUrl } from "../src/app.js";
import { FetchLike } from "../src/api.js";

function fixture(name: string): unknown {
  return JSON.parse(readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf-8"));
}

interface Call {
  url: string;
}

function fakeFetch(routes: Map<string, () => unknown>, calls: Call[]): FetchLike {
  return async (url: string) => {
    calls.push({ url });
    const handler = routes.get(url);
    if (!handler) return { ok: false, status: 404, json: async () => ({}) };
    return { ok: true, status: 200, json: async () => handler() };
  };
}

function makeApp(routes: Map<string, () => unknown>, calls: Call[]) {
  const root = { innerHTML: "" };
  // Long poll interval: tests drive refresh() directly.
  const app = new LeaderboardApp(root, "http://referee", fakeFetch(routes, calls), 3600_000);
  return { root, app };
}

const board = fixture("leaderboard.json") as { pack_id: string };
const challenges = [{ pack_id: board.pack_id, system: "lorenz", manifest: {} }];

describe("LeaderboardApp", () => {
  it("loads challenges, fetches the board, and renders the table", async () => {
    const calls: Call[] = [];
    const routes = new Map<string, () => unknown>([
      ["http://referee/api/v1/challenges", () => challenges],
      [`http://referee/api/v1/challenges/${board.pack_id}/leaderboard`, () => fixture("leaderboard.json")],
    ]);
    const { root, app } = makeApp(routes, calls);
    await app.start();
    app.stop();
    expect(root.innerHTML).toContain("<table");
    expect(root.innerHTML).not.toContain("stale-banner");
    // Read-only contract: only the two GET endpoints were touched.
    expect(calls.map((c) => c.url)).toEqual([
      "http://referee/api/v1/challenges",
      `http://referee/api/v1/challenges/${board.pack_id}/leaderboard`,
    ]);
  });

  it("marks the view stale when a poll fails but keeps the last board", async () => {
    let healthy = true;
    const routes = new Map<string, () => unknown>([
      ["http://referee/api/v1/challenges", () => challenges],
      [
        `http://referee/api/v1/challenges/${board.pack_id}/leaderboard`,
        () => {
          if (!healthy) throw new Error("boom");
          return fixture("leaderboard.json");
        },
      ],
    ]);
    const calls: Call[] = [];
    const { root, app } = makeApp(routes, calls);
    await app.start();
    healthy = false;
    await app.refresh();
    app.stop();
    expect(root.innerHTML).toContain("stale-banner");
    expect(root.innerHTML).toContain("<table");
  });

  it("shows the version-mismatch banner for a future schema", async () => {
    const routes = new Map<string, () => unknown>([
      ["http://referee/api/v1/challenges", () => challenges],
      [
        `http://referee/api/v1/challenges/${board.pack_id}/leaderboard`,
        () => fixture("version_mismatch.json"),
      ],
    ]);
    const { root, app } = makeApp(routes, []);
    await app.start();
    app.stop();
    expect(root.innerHTML).toContain("schema version mismatch");
  });

  it("shows an error card for a malformed payload without throwing", async () => {
    const routes = new Map<string, () => unknown>([
      ["http://referee/api/v1/challenges", () => challenges],
      [
        `http://referee/api/v1/challenges/${board.pack_id}/leaderboard`,
        () => fixture("malformed.json"),
      ],
    ]);
    const { root, app } = makeApp(routes, []);
    await app.start();
    app.stop();
    expect(root.innerHTML).toContain("error-card");
    expect(root.innerHTML).toContain("malformed server payload");
  });

  it("reports an unreachable referee", async () => {
    const { root, app } = makeApp(new Map(), []);
    await app.start();
    app.stop();
    expect(root.innerHTML).toContain("cannot reach referee");
  });
});

describe("resolveBaseUrl", () => {
  it("prefers the query parameter, then the meta tag, then same origin", () => {
    expect(
      resolveBaseUrl({ search: "?api=http://x:1/", origin: "http://o" }, "http://meta"),
    ).toBe("http://x:1");
    expect(resolveBaseUrl({ search: "", origin: "http://o" }, "http://meta/")).toBe("http://meta");
    expect(resolveBaseUrl({ search: "", origin: "http://o" }, null)).toBe("http://o");
  });
});
