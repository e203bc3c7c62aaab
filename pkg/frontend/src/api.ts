/**
 * Thin read-only client for the referee API.  Only GET requests, ever: the
 * UI must not be able to mutate server state.  The fetch implementation is
 * injectable so tests can drive the client without a network.
 */

import {
  ChallengeInfo,
  LeaderboardResponse,
  parseChallenges,
  parseLeaderboard,
} from "./types.js";

export interface FetchResponse {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (url: string) => Promise<FetchResponse>;

export class ApiError extends Error {
  constructor(public readonly status: number, message: string) {
    super(message);
  }
}

async function getJson(fetchImpl: FetchLike, url: string): Promise<unknown> {
  const response = await fetchImpl(url);
  if (!response.ok) {
    throw new ApiError(response.status, `GET ${url} failed with ${response.status}`);
  }
  return response.json();
}

export async function fetchChallenges(
  baseUrl: string,
  fetchImpl: FetchLike,
): Promise<ChallengeInfo[]> {
  return parseChallenges(await getJson(fetchImpl, `${baseUrl}/api/v1/challenges`));
}

export async function fetchLeaderboard(
  baseUrl: string,
  packId: string,
  fetchImpl: FetchLike,
): Promise<LeaderboardResponse> {
  const url = `${baseUrl}/api/v1/challenges/${encodeURIComponent(packId)}/leaderboard`;
  return parseLeaderboard(await getJson(fetchImpl, url));
}
