/** Shapes of the jbender HTTP JSON API responses. */

export interface ProjectInfo {
  id: string;
  name: string;
  license: string;
  homepage: string;
  user_count: number;
  developer_count: number;
}

export interface ResultRecord {
  qualified_name: string;
  kind: string;
  snippet: string;
  file_path: string;
  project: ProjectInfo;
  trust: number | null;
  trust_scale: number | null;
  relevance: number;
}

export interface ResultPage {
  query_echo: string;
  sort: string;
  alpha: number;
  total_matches: number;
  results: ResultRecord[];
}

export interface ProjectRankingRow {
  id: string;
  name: string;
  trust: number | null;
  trust_scale: number | null;
  votes: number;
}

export interface DeveloperRankingRow {
  id: string;
  karma: number;
}

export interface ApiError {
  error: string;
}
