/**
 * End-to-end smoke test against a live service (see scripts/run_smoke.sh,
 * which starts one on a fixture dataset containing a constant item).
 * Skips when SERVICE_URL is not reachable so the unit suite stays
 * self-contained.
 */
import assert from "node:assert/strict";
import { test } from "node:test";

import { ApiClient } from "../src/api.js";
import { buildMapModel, buildPanelModel, highlightedBoxesPerColumn } from "../src/render.js";
import { DEFAULT_STATE, stateFromQuery, stateToQuery, type ViewState } from "../src/state.js";

const SERVICE_URL = process.env["SERVICE_URL"] ?? "http://127.0.0.1:7878";
const CONSTANT_ITEM = process.env["SMOKE_CONSTANT_ITEM"] ?? "steady";

async function serviceUp(): Promise<boolean> {
  try {
    const response = await fetch(`${SERVICE_URL}/datasets`, {
      signal: AbortSignal.timeout(1500),
    });
    return response.ok;
  } catch {
    return false;
  }
}

test("explorer smoke test against a running service", async (t) => {
  if (!(await serviceUp())) {
    t.skip(`no service at ${SERVICE_URL}`);
    return;
  }
  const api = new ApiClient(SERVICE_URL);
  const datasets = await api.datasets();
  assert.ok(datasets.length >= 1, "service has a dataset");
  const ds = datasets[0]!;

  // search finds the constant item by prefix
  const found = await api.searchItems(ds.id, CONSTANT_ITEM.slice(0, 3));
  assert.ok(found.items.includes(CONSTANT_ITEM), `search finds ${CONSTANT_ITEM}`);

  // selecting it renders one highlighted box per column
  let state: ViewState = {
    ...DEFAULT_STATE,
    dataset: ds.id,
    item: CONSTANT_ITEM,
    couples: ds.default_couples,
  };
  const map = await api.map(state, state.couples);
  const model = buildMapModel(map);
  const perColumn = highlightedBoxesPerColumn(model);
  assert.equal(perColumn.size, map.time_labels.length, "highlighted in every column");
  for (const time of map.time_labels) {
    assert.equal(perColumn.get(time), 1, `exactly one highlighted box at ${time}`);
  }

  // the panel shows EARLY_MONOSTAGNANT for a constant trajectory
  const profile = await api.profile(state, state.couples, CONSTANT_ITEM);
  const panel = buildPanelModel(profile);
  assert.equal(panel.primary, "EARLY_MONOSTAGNANT");
  assert.ok(panel.labels[0]?.primary);

  // editing couples re-renders from fresh service data, no reload involved
  state = { ...state, couples: `(${ds.items},1)` };
  const remap = await api.map(state, state.couples);
  const remodel = buildMapModel(remap);
  assert.notDeepEqual(remodel, model, "couples edit changes the rendered model");
  assert.equal(remap.bin_labels.length, ds.items);
  const recount = highlightedBoxesPerColumn(remodel);
  for (const time of remap.time_labels) {
    assert.equal(recount.get(time), 1);
  }

  // the shareable URL reproduces the exact view state
  assert.deepEqual(stateFromQuery(stateToQuery(state)), state);
});
