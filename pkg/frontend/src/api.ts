/** Thin fetch wrappers around the jbender JSON endpoints. */

import type {
  DeveloperRankingRow,
  ProjectRankingRow,
  ResultPage,
} from "./types.js";

async function getJson<T>(url: string, signal?: AbortSignal): Promise<T> {
  const response = await fetch(url, { signal });
  const body = await response.json();
  if (!response.ok) {
    const message =
      body && typeof body.error === "string" ? body.error : response.statusText;
    throw new Error(message);
  }
  return body as T;
}

export function searchUrl(query: string, sort: string, alpha: number, limit = 20): string {
  const params = new URLSearchParams({
    q: query,
    sort,
    alpha: String(alpha),
    limit: String(limit),
  });
  return `/api/search?${params.toString()}`;
}

export function fetchSearch(
  query: string,
  sort: string,
  alpha: number,
  signal?: AbortSignal,
): Promise<ResultPage> {
  return getJson<ResultPage>(searchUrl(query, sort, alpha), signal);
}

export function fetchProjectRankings(
  top: number,
  by: "trust" | "votes",
): Promise<ProjectRankingRow[]> {
  return getJson<{ rows: ProjectRankingRow[] }>(
    `/api/rankings/projects?top=${top}&by=${by}`,
  ).then((page) => page.rows);
}

export function fetchDeveloperRankings(top: number): Promise<DeveloperRankingRow[]> {
  return getJson<{ rows: DeveloperRankingRow[] }>(
    `/api/rankings/developers?top=${top}`,
  ).then((page) => page.rows);
}
