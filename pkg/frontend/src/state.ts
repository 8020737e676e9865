/** UI state mirrored into the URL so searches are shareable/bookmarkable. */

export type SortMode = "relevance" | "trust" | "blend";
export type View = "search" | "rankings";

export interface AppState {
  view: View;
  query: string;
  sort: SortMode;
  alpha: number;
}

export const DEFAULT_STATE: AppState = {
  view: "search",
  query: "",
  sort: "relevance",
  alpha: 0.5,
};

const SORTS: SortMode[] = ["relevance", "trust", "blend"];

export function encodeState(state: AppState): string {
  const params = new URLSearchParams();
  if (state.view !== "search") params.set("view", state.view);
  if (state.query) params.set("q", state.query);
  if (state.sort !== "relevance") params.set("sort", state.sort);
  if (state.alpha !== 0.5) params.set("alpha", String(state.alpha));
  const text = params.toString();
  return text ? `?${text}` : "";
}

export function decodeState(search: string): AppState {
  const params = new URLSearchParams(search);
  const sortParam = params.get("sort") ?? "";
  const alphaRaw = params.get("alpha");
  const alphaParam = alphaRaw === null ? NaN : Number(alphaRaw);
  return {
    view: params.get("view") === "rankings" ? "rankings" : "search",
    query: params.get("q") ?? "",
    sort: (SORTS as string[]).includes(sortParam) ? (sortParam as SortMode) : "relevance",
    alpha: Number.isFinite(alphaParam) && alphaParam >= 0 && alphaParam <= 1
      ? alphaParam
      : 0.5,
  };
}
