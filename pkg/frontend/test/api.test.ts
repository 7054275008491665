import assert from "node:assert/strict";
import { test } from "node:test";

import { ApiClient, ApiError } from "../src/api.js";
import { DEFAULT_STATE, type ViewState } from "../src/state.js";

const STATE: ViewState = {
  ...DEFAULT_STATE,
  dataset: "gdp data",
  item: "country 42",
  couples: "(20,1),(100,5)",
  nullMode: "DROP_LAST_BIN",
};

interface Call {
  url: string;
  signal?: AbortSignal;
}

function mockFetch(calls: Call[], body: unknown = {}, status = 200) {
  return (url: string, init?: { signal?: AbortSignal }) => {
    calls.push({ url, signal: init?.signal });
    return Promise.resolve({
      ok: status < 400,
      status,
      json: () => Promise.resolve(body),
    });
  };
}

test("map URL encodes dataset, couples, null mode and highlight", async () => {
  const calls: Call[] = [];
  const api = new ApiClient("http://svc", mockFetch(calls));
  await api.map(STATE, STATE.couples);
  assert.equal(calls.length, 1);
  const url = new URL(calls[0]!.url);
  assert.equal(url.pathname, "/datasets/gdp%20data/map");
  assert.equal(url.searchParams.get("couples"), "(20,1),(100,5)");
  assert.equal(url.searchParams.get("null_mode"), "DROP_LAST_BIN");
  assert.equal(url.searchParams.get("highlight"), "country 42");
});

test("profile URL carries the classifier params", async () => {
  const calls: Call[] = [];
  const api = new ApiClient("http://svc", mockFetch(calls));
  await api.profile(
    { ...STATE, params: { deltaSpike: 3, epsilon: 1, lambda: 19, rho: 0.6, equivTol: 0 } },
    STATE.couples,
    "country 42",
  );
  const url = new URL(calls[0]!.url);
  assert.equal(url.pathname, "/datasets/gdp%20data/profile/country%2042");
  assert.equal(url.searchParams.get("delta_spike"), "3");
  assert.equal(url.searchParams.get("lambda"), "19");
  assert.equal(url.searchParams.get("equiv_tol"), "0");
});

test("a second request of the same kind aborts the first", async () => {
  const calls: Call[] = [];
  const api = new ApiClient("http://svc", mockFetch(calls));
  await api.map(STATE, STATE.couples);
  await api.map(STATE, STATE.couples);
  assert.equal(calls.length, 2);
  assert.ok(calls[0]!.signal?.aborted);
  assert.ok(!calls[1]!.signal?.aborted);
});

test("requests of different kinds do not cancel each other", async () => {
  const calls: Call[] = [];
  const api = new ApiClient("http://svc", mockFetch(calls));
  await api.map(STATE, STATE.couples);
  await api.profile(STATE, STATE.couples, "country 42");
  assert.ok(!calls[0]!.signal?.aborted);
  assert.ok(!calls[1]!.signal?.aborted);
});

test("http errors surface status and detail", async () => {
  const calls: Call[] = [];
  const api = new ApiClient("http://svc", mockFetch(calls, { detail: "unknown item: zz" }, 404));
  await assert.rejects(
    () => api.searchItems("gdp data", "zz"),
    (error: unknown) => error instanceof ApiError && error.status === 404 && /zz/.test(error.detail),
  );
});

test("map svg url mirrors the map query", () => {
  const api = new ApiClient("http://svc", mockFetch([]));
  const url = new URL(api.mapSvgUrl(STATE, STATE.couples));
  assert.equal(url.pathname, "/datasets/gdp%20data/map.svg");
  assert.equal(url.searchParams.get("highlight"), "country 42");
});
