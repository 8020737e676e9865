/** Pure HTML renderers; every displayed value comes verbatim from the API. */

import type {
  DeveloperRankingRow,
  ProjectRankingRow,
  ResultPage,
  ResultRecord,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Trust as shown on cards: two decimals, or "n/a" when undefined (never 0). */
export function formatTrust(trust: number | null): string {
  return trust === null ? "n/a" : trust.toFixed(2);
}

export function formatScale(scale: number | null): string {
  return scale === null ? "n/a" : String(scale);
}

export function renderResultCard(record: ResultRecord): string {
  const project = record.project;
  return `
<div class="card" data-qn="${escapeHtml(record.qualified_name)}">
  <div class="card-project">
    <div class="project-name">${escapeHtml(project.name)}</div>
    <div class="trust-line">
      Trustability: <span class="trust-value">${formatTrust(record.trust)}</span>
      <span class="trust-badge" title="trust scale 1-10">${formatScale(record.trust_scale)}</span>
    </div>
    <div class="project-meta">License: ${escapeHtml(project.license)}</div>
    <div class="project-meta">${project.user_count} users</div>
    <div class="project-meta">${project.developer_count} developers</div>
  </div>
  <div class="card-result">
    <div class="result-title">${escapeHtml(record.qualified_name)}
      <span class="kind">${escapeHtml(record.kind)}</span>
    </div>
    <div class="result-path">${escapeHtml(record.file_path)}</div>
    <pre class="snippet">${escapeHtml(record.snippet)}</pre>
  </div>
</div>`;
}

export function renderResults(page: ResultPage): string {
  if (page.results.length === 0) {
    return `<p class="no-results">no results</p>`;
  }
  const cards = page.results.map(renderResultCard).join("\n");
  return `<p class="match-count">${page.total_matches} matches</p>\n${cards}`;
}

export function renderErrorBanner(message: string): string {
  return `<div class="error-banner">${escapeHtml(message)}</div>`;
}

export function renderProjectsByVotes(rows: ProjectRankingRow[]): string {
  const body = rows
    .map(
      (row) =>
        `<tr><td>${escapeHtml(row.name)}</td><td class="num">${row.votes}</td></tr>`,
    )
    .join("");
  return `<table class="ranking" id="table-votes">
<caption>Top projects (by votes)</caption>
<thead><tr><th>project</th><th>votes</th></tr></thead>
<tbody>${body}</tbody></table>`;
}

export function renderDevelopersByKarma(rows: DeveloperRankingRow[]): string {
  const body = rows
    .map(
      (row) =>
        `<tr><td>${escapeHtml(row.id)}</td><td class="num">${row.karma.toFixed(2)}</td></tr>`,
    )
    .join("");
  return `<table class="ranking" id="table-karma">
<caption>Top developers (by karma)</caption>
<thead><tr><th>developer</th><th>karma</th></tr></thead>
<tbody>${body}</tbody></table>`;
}

export function renderProjectsByTrust(rows: ProjectRankingRow[]): string {
  const body = rows
    .map(
      (row) =>
        `<tr><td>${escapeHtml(row.name)}</td>` +
        `<td class="num">${formatTrust(row.trust)}</td>` +
        `<td class="num">${row.votes}</td></tr>`,
    )
    .join("");
  return `<table class="ranking" id="table-trust">
<caption>Top projects (by trustability)</caption>
<thead><tr><th>project</th><th>trust</th><th>votes</th></tr></thead>
<tbody>${body}</tbody></table>`;
}

export function renderTableError(caption: string, message: string): string {
  return `<table class="ranking"><caption>${escapeHtml(caption)}</caption>
<tbody><tr><td class="table-error">${escapeHtml(message)}</td></tr></tbody></table>`;
}
