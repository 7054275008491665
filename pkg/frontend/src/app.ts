/**
 * Explorer wiring: search and select an item, see its blackened trajectory
 * in the full map, read its matched shape labels, tune binning and
 * classifier settings. Every edit refetches from the service (debounced,
 * latest wins) and re-renders in place; the full view state mirrors into
 * the URL hash so views are shareable.
 */
import {
  ApiClient,
  ApiError,
  type DatasetInfo,
  type MapResponse,
  type ProfileResponse,
} from "./api.js";
import { identityCouples, parseCouples } from "./couples.js";
import { buildMapModel, buildPanelModel, DEFAULT_BOX_STYLE, type MapModel } from "./render.js";
import {
  DEFAULT_PARAMS,
  DEFAULT_STATE,
  stateFromQuery,
  stateToQuery,
  type ViewState,
} from "./state.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const DEBOUNCE_MS = 150;

function readUrlState(): ViewState {
  return stateFromQuery(window.location.hash.replace(/^#\??/, ""));
}

function writeUrlState(state: ViewState): void {
  const query = stateToQuery(state);
  window.history.replaceState(null, "", query ? `#?${query}` : window.location.pathname);
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  if (text !== undefined) node.textContent = text;
  return node;
}

export class ExplorerApp {
  private state: ViewState;
  private datasets: DatasetInfo[] = [];
  private lastMap: MapResponse | null = null;
  private debounceTimer: number | undefined;

  private readonly searchInput = el("input", { placeholder: "search items…", type: "search" });
  private readonly searchResults = el("ul", { class: "results" });
  private readonly datasetSelect = el("select", { class: "dataset" });
  private readonly couplesInput = el("input", { class: "couples", spellcheck: "false" });
  private readonly couplesError = el("span", { class: "error" });
  private readonly nullModeSelect = el("select");
  private readonly viewModeSelect = el("select");
  private readonly paramInputs = {
    deltaSpike: el("input", { type: "number", min: "1", step: "1" }),
    epsilon: el("input", { type: "number", min: "0", step: "1" }),
    lambda: el("input", { type: "number", min: "0", step: "1", placeholder: "auto" }),
    rho: el("input", { type: "number", min: "0.05", max: "1", step: "0.05" }),
    equivTol: el("input", { type: "number", min: "0", step: "1" }),
  };
  private readonly mapHost = el("div", { class: "map-host" });
  private readonly panelHost = el("aside", { class: "panel" });
  private readonly statusLine = el("div", { class: "status" });
  private readonly exportLink = el("a", { class: "export", target: "_blank" }, "open SVG");

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    this.state = readUrlState();
  }

  async start(): Promise<void> {
    this.buildShell();
    this.datasets = await this.api.datasets();
    if (this.datasets.length === 0) {
      this.setStatus("service has no datasets loaded");
      return;
    }
    for (const ds of this.datasets) {
      this.datasetSelect.append(el("option", { value: ds.id }, `${ds.id} (${ds.items} items)`));
    }
    const known = this.datasets.find((d) => d.id === this.state.dataset);
    const active = known ?? this.datasets[0]!;
    this.state = {
      ...this.state,
      dataset: active.id,
      item: known ? this.state.item : null,
      couples: this.state.couples || active.default_couples,
    };
    this.datasetSelect.value = this.state.dataset;
    this.syncControls();
    window.addEventListener("popstate", () => {
      this.state = readUrlState();
      this.syncControls();
      void this.refresh();
    });
    await this.refresh();
  }

  private buildShell(): void {
    const controls = el("div", { class: "controls" });
    const searchBox = el("div", { class: "search" });
    searchBox.append(this.searchInput, this.searchResults);

    this.nullModeSelect.append(
      el("option", { value: "KEEP_NULLS" }, "keep nulls"),
      el("option", { value: "DROP_LAST_BIN" }, "drop last bin"),
    );
    this.viewModeSelect.append(
      el("option", { value: "binned" }, "binned"),
      el("option", { value: "unbinned" }, "unbinned"),
    );

    const couplesField = el("label", {}, "couples ");
    couplesField.append(this.couplesInput, this.couplesError);
    controls.append(
      el("label", {}, "dataset "),
      this.datasetSelect,
      searchBox,
      couplesField,
      labeled("nulls", this.nullModeSelect),
      labeled("view", this.viewModeSelect),
      labeled("Δ spike", this.paramInputs.deltaSpike),
      labeled("ε", this.paramInputs.epsilon),
      labeled("λ", this.paramInputs.lambda),
      labeled("ρ", this.paramInputs.rho),
      labeled("plateau tol", this.paramInputs.equivTol),
      this.exportLink,
    );
    this.root.append(controls, this.statusLine, this.mapHost, this.panelHost);

    this.datasetSelect.addEventListener("change", () => {
      const ds = this.datasets.find((d) => d.id === this.datasetSelect.value);
      this.update({
        dataset: this.datasetSelect.value,
        item: null,
        couples: ds?.default_couples ?? "",
      });
    });
    this.searchInput.addEventListener("input", () => void this.searchItems());
    this.couplesInput.addEventListener("input", () => this.onCouplesEdit());
    this.nullModeSelect.addEventListener("change", () =>
      this.update({ nullMode: this.nullModeSelect.value as ViewState["nullMode"] }),
    );
    this.viewModeSelect.addEventListener("change", () =>
      this.update({ viewMode: this.viewModeSelect.value as ViewState["viewMode"] }),
    );
    const bind = (key: keyof typeof this.paramInputs) => {
      this.paramInputs[key].addEventListener("input", () => {
        const raw = this.paramInputs[key].value;
        const parsed = key === "rho" ? Number.parseFloat(raw) : Number.parseInt(raw, 10);
        const value = Number.isFinite(parsed) ? parsed : key === "lambda" ? null : DEFAULT_PARAMS[key];
        this.update({ params: { ...this.state.params, [key]: value } });
      });
    };
    (Object.keys(this.paramInputs) as (keyof typeof this.paramInputs)[]).forEach(bind);

    function labeled(text: string, control: HTMLElement): HTMLElement {
      const wrap = el("label", {}, `${text} `);
      wrap.append(control);
      return wrap;
    }
  }

  private syncControls(): void {
    this.couplesInput.value = this.state.couples;
    this.nullModeSelect.value = this.state.nullMode;
    this.viewModeSelect.value = this.state.viewMode;
    this.paramInputs.deltaSpike.value = String(this.state.params.deltaSpike);
    this.paramInputs.epsilon.value = String(this.state.params.epsilon);
    this.paramInputs.lambda.value = this.state.params.lambda === null ? "" : String(this.state.params.lambda);
    this.paramInputs.rho.value = String(this.state.params.rho);
    this.paramInputs.equivTol.value = String(this.state.params.equivTol);
  }

  /** Couples are validated inline; invalid input never triggers a request. */
  private onCouplesEdit(): void {
    const text = this.couplesInput.value.trim();
    if (text !== "") {
      const result = parseCouples(text);
      if (!result.ok) {
        this.couplesError.textContent = result.error;
        return;
      }
    }
    this.couplesError.textContent = "";
    this.update({ couples: text });
  }

  private update(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    writeUrlState(this.state);
    window.clearTimeout(this.debounceTimer);
    this.debounceTimer = window.setTimeout(() => void this.refresh(), DEBOUNCE_MS);
  }

  private effectiveCouples(): string {
    if (this.state.viewMode === "unbinned") {
      const ds = this.datasets.find((d) => d.id === this.state.dataset);
      return identityCouples(ds?.items ?? 1);
    }
    return this.state.couples;
  }

  private async searchItems(): Promise<void> {
    const prefix = this.searchInput.value.trim();
    this.searchResults.replaceChildren();
    if (prefix === "") return;
    try {
      const { items } = await this.api.searchItems(this.state.dataset, prefix);
      for (const item of items.slice(0, 30)) {
        const entry = el("li", {}, item);
        entry.addEventListener("click", () => {
          this.searchResults.replaceChildren();
          this.searchInput.value = item;
          this.update({ item });
        });
        this.searchResults.append(entry);
      }
      if (items.length === 0) this.searchResults.append(el("li", { class: "empty" }, "no matches"));
    } catch (error) {
      this.reportError("search", error);
    }
  }

  private async refresh(): Promise<void> {
    const couples = this.effectiveCouples();
    this.exportLink.setAttribute("href", this.api.mapSvgUrl(this.state, couples));
    try {
      const map = await this.api.map(this.state, couples);
      this.lastMap = map;
      this.renderMap(buildMapModel(map));
      this.setStatus(
        `${map.item_count} items × ${map.time_labels.length} time points, ` +
          `${map.bin_labels.length} bins (${map.couples})`,
      );
    } catch (error) {
      if (isAbort(error)) return;
      this.reportError("map", error);
      return;
    }
    if (this.state.item === null) {
      this.panelHost.replaceChildren();
      return;
    }
    try {
      const profile = await this.api.profile(this.state, couples, this.state.item);
      this.renderPanelFrom(profile);
    } catch (error) {
      if (!isAbort(error)) this.reportError("profile", error);
    }
  }

  private renderMap(model: MapModel): void {
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("width", String(model.width));
    svg.setAttribute("height", String(model.height + 14));
    for (const box of model.boxes) {
      const rect = document.createElementNS(SVG_NS, "rect");
      rect.setAttribute("x", String(box.x));
      rect.setAttribute("y", String(box.y));
      rect.setAttribute("width", String(box.width));
      rect.setAttribute("height", String(box.height));
      rect.setAttribute("fill", box.fill);
      if (box.highlighted) rect.setAttribute("data-highlight", "1");
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent = box.title;
      rect.append(title);
      svg.append(rect);
    }
    for (const label of model.columnLabels) {
      const text = document.createElementNS(SVG_NS, "text");
      text.setAttribute("x", String(label.x));
      text.setAttribute("y", String(model.height + 10));
      text.setAttribute("text-anchor", "middle");
      text.setAttribute("font-size", "9");
      text.textContent = label.text;
      svg.append(text);
    }
    this.mapHost.replaceChildren(svg);
  }

  private renderPanelFrom(profile: ProfileResponse): void {
    const model = buildPanelModel(profile);
    const heading = el("h2", {}, model.item);
    const labelList = el("ul", { class: "labels" });
    if (model.labels.length === 0) {
      labelList.append(el("li", { class: "none" }, "no shape matched"));
    }
    for (const label of model.labels) {
      labelList.append(
        el("li", { class: label.primary ? "primary" : "secondary" }, label.name),
      );
    }
    const plateauList = el("ul", { class: "plateaus" });
    for (const span of model.plateaus) {
      plateauList.append(el("li", {}, `plateau ${span.from} → ${span.to} (level ${span.level})`));
    }
    const mean = el(
      "div",
      { class: "mean" },
      model.meanLevel === null ? "never present" : `mean level ${model.meanLevel}`,
    );
    this.panelHost.replaceChildren(heading, labelList, plateauList, mean);
  }

  private setStatus(text: string): void {
    this.statusLine.textContent = text;
    this.statusLine.classList.remove("error");
  }

  private reportError(field: string, error: unknown): void {
    const detail = error instanceof ApiError ? error.detail : String(error);
    this.statusLine.textContent = `${field}: ${detail}`;
    this.statusLine.classList.add("error");
  }
}

function isAbort(error: unknown): boolean {
  return error instanceof DOMException && error.name === "AbortError";
}

export function mount(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");
  const base = (root.dataset["serviceUrl"] ?? "http://127.0.0.1:7878").replace(/\/$/, "");
  const app = new ExplorerApp(root, new ApiClient(base));
  void app.start();
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  mount();
}
