/**
 * Typed client for the map service. All computation (ranking, binning,
 * labeling) happens server-side; this module only builds URLs, decodes
 * JSON and cancels stale requests (at most one in flight per endpoint
 * kind, latest wins).
 */
import type { ViewState } from "./state.js";

export interface DatasetInfo {
  id: string;
  items: number;
  time_points: number;
  default_couples: string;
}

export interface MapBin {
  bin: number;
  label: string;
  count: number;
}

export interface MapColumn {
  time: string;
  bins: MapBin[];
}

export interface MapResponse {
  dataset: string;
  couples: string;
  null_mode: string;
  item_count: number;
  time_labels: string[];
  bin_labels: string[];
  columns: MapColumn[];
  highlight: { item: string; trace: (number | null)[] } | null;
}

export interface PlateauSpan {
  start: number;
  end: number;
  level: number;
}

export interface ProfileResponse {
  dataset: string;
  item: string;
  time_labels: string[];
  levels: (number | null)[];
  mean_level: number | null;
  plateaus: PlateauSpan[];
  matched: string[];
  primary: string;
  params: Record<string, number | null>;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

type FetchLike = (url: string, init?: { signal?: AbortSignal }) => Promise<{
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}>;

function mapQuery(state: ViewState, effectiveCouples: string): URLSearchParams {
  const params = new URLSearchParams();
  if (effectiveCouples) params.set("couples", effectiveCouples);
  params.set("null_mode", state.nullMode);
  return params;
}

function profileQuery(state: ViewState, effectiveCouples: string): URLSearchParams {
  const params = mapQuery(state, effectiveCouples);
  const p = state.params;
  params.set("delta_spike", String(p.deltaSpike));
  params.set("epsilon", String(p.epsilon));
  if (p.lambda !== null) params.set("lambda", String(p.lambda));
  params.set("rho", String(p.rho));
  params.set("equiv_tol", String(p.equivTol));
  return params;
}

export class ApiClient {
  private controllers = new Map<string, AbortController>();

  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  /** Abort any in-flight request of the same kind, then fetch. */
  private async get<T>(kind: string, path: string): Promise<T> {
    this.controllers.get(kind)?.abort();
    const controller = new AbortController();
    this.controllers.set(kind, controller);
    const response = await this.fetchFn(this.baseUrl + path, { signal: controller.signal });
    if (!response.ok) {
      const body = (await response.json().catch(() => ({}))) as { detail?: string };
      throw new ApiError(response.status, body.detail ?? "request failed");
    }
    return (await response.json()) as T;
  }

  datasets(): Promise<DatasetInfo[]> {
    return this.get("datasets", "/datasets");
  }

  searchItems(dataset: string, prefix: string): Promise<{ items: string[] }> {
    const q = new URLSearchParams({ q: prefix });
    return this.get("items", `/datasets/${encodeURIComponent(dataset)}/items?${q}`);
  }

  map(state: ViewState, effectiveCouples: string): Promise<MapResponse> {
    const params = mapQuery(state, effectiveCouples);
    if (state.item !== null) params.set("highlight", state.item);
    return this.get("map", `/datasets/${encodeURIComponent(state.dataset)}/map?${params}`);
  }

  profile(state: ViewState, effectiveCouples: string, item: string): Promise<ProfileResponse> {
    const params = profileQuery(state, effectiveCouples);
    return this.get(
      "profile",
      `/datasets/${encodeURIComponent(state.dataset)}/profile/${encodeURIComponent(item)}?${params}`,
    );
  }

  /** URL of the server-rendered document, used for the export link. */
  mapSvgUrl(state: ViewState, effectiveCouples: string): string {
    const params = mapQuery(state, effectiveCouples);
    if (state.item !== null) params.set("highlight", state.item);
    return `${this.baseUrl}/datasets/${encodeURIComponent(state.dataset)}/map.svg?${params}`;
  }
}
