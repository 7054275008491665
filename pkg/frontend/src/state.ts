/**
 * View state <-> URL query synchronization.
 *
 * The full view state lives in the URL hash query (#?dataset=...), so any
 * view is shareable and bookmarkable. Encoding and decoding are pure and
 * round-trip exactly; browser wiring lives in app.ts.
 */

export type NullMode = "KEEP_NULLS" | "DROP_LAST_BIN";
export type ViewMode = "binned" | "unbinned";

export interface ClassifierParams {
  deltaSpike: number;
  epsilon: number;
  /** Prominence threshold bin; null = let the service derive it from the scheme. */
  lambda: number | null;
  rho: number;
  equivTol: number;
}

export interface ViewState {
  dataset: string;
  /** Selected (highlighted) item, or null for an all-gray map. */
  item: string | null;
  couples: string;
  nullMode: NullMode;
  viewMode: ViewMode;
  params: ClassifierParams;
}

export const DEFAULT_PARAMS: ClassifierParams = {
  deltaSpike: 2,
  epsilon: 0,
  lambda: null,
  rho: 0.5,
  equivTol: 1,
};

export const DEFAULT_STATE: ViewState = {
  dataset: "",
  item: null,
  couples: "",
  nullMode: "KEEP_NULLS",
  viewMode: "binned",
  params: DEFAULT_PARAMS,
};

export function stateToQuery(state: ViewState): string {
  const params = new URLSearchParams();
  if (state.dataset) params.set("dataset", state.dataset);
  if (state.item !== null) params.set("item", state.item);
  if (state.couples) params.set("couples", state.couples);
  if (state.nullMode !== DEFAULT_STATE.nullMode) params.set("null_mode", state.nullMode);
  if (state.viewMode !== DEFAULT_STATE.viewMode) params.set("view", state.viewMode);
  const p = state.params;
  if (p.deltaSpike !== DEFAULT_PARAMS.deltaSpike) params.set("delta_spike", String(p.deltaSpike));
  if (p.epsilon !== DEFAULT_PARAMS.epsilon) params.set("epsilon", String(p.epsilon));
  if (p.lambda !== null) params.set("lambda", String(p.lambda));
  if (p.rho !== DEFAULT_PARAMS.rho) params.set("rho", String(p.rho));
  if (p.equivTol !== DEFAULT_PARAMS.equivTol) params.set("equiv_tol", String(p.equivTol));
  return params.toString();
}

function intOr(raw: string | null, fallback: number): number {
  if (raw === null) return fallback;
  const n = Number.parseInt(raw, 10);
  return Number.isFinite(n) ? n : fallback;
}

function floatOr(raw: string | null, fallback: number): number {
  if (raw === null) return fallback;
  const n = Number.parseFloat(raw);
  return Number.isFinite(n) ? n : fallback;
}

export function stateFromQuery(query: string): ViewState {
  const params = new URLSearchParams(query);
  const nullMode = params.get("null_mode");
  const view = params.get("view");
  const lambdaRaw = params.get("lambda");
  return {
    dataset: params.get("dataset") ?? DEFAULT_STATE.dataset,
    item: params.get("item"),
    couples: params.get("couples") ?? DEFAULT_STATE.couples,
    nullMode: nullMode === "DROP_LAST_BIN" ? "DROP_LAST_BIN" : "KEEP_NULLS",
    viewMode: view === "unbinned" ? "unbinned" : "binned",
    params: {
      deltaSpike: intOr(params.get("delta_spike"), DEFAULT_PARAMS.deltaSpike),
      epsilon: intOr(params.get("epsilon"), DEFAULT_PARAMS.epsilon),
      lambda: lambdaRaw === null ? null : intOr(lambdaRaw, 0),
      rho: floatOr(params.get("rho"), DEFAULT_PARAMS.rho),
      equivTol: intOr(params.get("equiv_tol"), DEFAULT_PARAMS.equivTol),
    },
  };
}
