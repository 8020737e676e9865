/** DOM wiring: tabs, search form, latest-wins fetching, URL state sync. */

import {
  fetchDeveloperRankings,
  fetchProjectRankings,
  fetchSearch,
} from "./api.js";
import {
  renderDevelopersByKarma,
  renderErrorBanner,
  renderProjectsByTrust,
  renderProjectsByVotes,
  renderResults,
  renderTableError,
} from "./render.js";
import { AppState, decodeState, encodeState, SortMode } from "./state.js";

const RANKING_TOP = 10;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

let state: AppState = decodeState(window.location.search);
let inflight: AbortController | null = null;

function syncUrl(): void {
  history.replaceState(null, "", `${window.location.pathname}${encodeState(state)}`);
}

function syncControls(): void {
  el<HTMLInputElement>("query").value = state.query;
  el<HTMLSelectElement>("sort").value = state.sort;
  const alpha = el<HTMLInputElement>("alpha");
  alpha.value = String(state.alpha);
  alpha.disabled = state.sort !== "blend";
  el<HTMLSpanElement>("alpha-value").textContent = state.alpha.toFixed(2);
  el<HTMLElement>("view-search").hidden = state.view !== "search";
  el<HTMLElement>("view-rankings").hidden = state.view !== "rankings";
  el<HTMLButtonElement>("tab-search").classList.toggle("active", state.view === "search");
  el<HTMLButtonElement>("tab-rankings").classList.toggle("active", state.view === "rankings");
}

async function runSearch(): Promise<void> {
  const results = el<HTMLDivElement>("results");
  if (!state.query.trim()) {
    results.innerHTML = "";
    return;
  }
  // Latest wins: a new submission supersedes the in-flight request.
  inflight?.abort();
  const controller = new AbortController();
  inflight = controller;
  try {
    const page = await fetchSearch(state.query, state.sort, state.alpha, controller.signal);
    if (inflight === controller) {
      results.innerHTML = renderResults(page);
    }
  } catch (err) {
    if ((err as Error).name === "AbortError") return;
    results.innerHTML = renderErrorBanner((err as Error).message);
  }
}

async function loadRankings(): Promise<void> {
  const votesSlot = el<HTMLDivElement>("rankings-votes");
  const karmaSlot = el<HTMLDivElement>("rankings-karma");
  const trustSlot = el<HTMLDivElement>("rankings-trust");
  const jobs: Array<Promise<void>> = [
    fetchProjectRankings(RANKING_TOP, "votes")
      .then((rows) => { votesSlot.innerHTML = renderProjectsByVotes(rows); })
      .catch((err) => {
        votesSlot.innerHTML = renderTableError("Top projects (by votes)", String(err));
      }),
    fetchDeveloperRankings(RANKING_TOP)
      .then((rows) => { karmaSlot.innerHTML = renderDevelopersByKarma(rows); })
      .catch((err) => {
        karmaSlot.innerHTML = renderTableError("Top developers (by karma)", String(err));
      }),
    fetchProjectRankings(RANKING_TOP, "trust")
      .then((rows) => { trustSlot.innerHTML = renderProjectsByTrust(rows); })
      .catch((err) => {
        trustSlot.innerHTML = renderTableError("Top projects (by trustability)", String(err));
      }),
  ];
  await Promise.all(jobs);
}

function switchView(view: AppState["view"]): void {
  state = { ...state, view };
  syncUrl();
  syncControls();
  if (view === "rankings") void loadRankings();
}

function init(): void {
  syncControls();

  el<HTMLFormElement>("search-form").addEventListener("submit", (event) => {
    event.preventDefault();
    state = { ...state, query: el<HTMLInputElement>("query").value };
    syncUrl();
    void runSearch();
  });

  el<HTMLSelectElement>("sort").addEventListener("change", (event) => {
    const sort = (event.target as HTMLSelectElement).value as SortMode;
    state = { ...state, sort };
    syncUrl();
    syncControls();
    void runSearch();
  });

  el<HTMLInputElement>("alpha").addEventListener("change", (event) => {
    state = { ...state, alpha: Number((event.target as HTMLInputElement).value) };
    syncUrl();
    syncControls();
    void runSearch();
  });

  el<HTMLButtonElement>("tab-search").addEventListener("click", () => switchView("search"));
  el<HTMLButtonElement>("tab-rankings").addEventListener("click", () => switchView("rankings"));

  el<HTMLInputElement>("query").focus();

  if (state.view === "rankings") {
    void loadRankings();
  } else if (state.query) {
    void runSearch();
  }
}

document.addEventListener("DOMContentLoaded", init);
