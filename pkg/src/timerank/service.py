"""Read-only JSON API over loaded datasets for the explorer client.

Datasets are loaded at startup and never mutated; binned maps are cached
per (couples, null mode) under a lock so concurrent requests compute each
map at most once.  Floats are rounded to 9 significant digits so equal
requests serialize identically.

Endpoints (all GET, JSON unless noted):

* ``/datasets``                          -- ids with item / time-point counts
* ``/datasets/{id}/items?q=``            -- item ids matching a prefix
* ``/datasets/{id}/map``                 -- cells, scheme labels, highlight trace
* ``/datasets/{id}/map.svg``             -- rendered document (image/svg+xml)
* ``/datasets/{id}/profile/{item}``      -- levels, plateaus, matched labels
* ``/datasets/{id}/histogram``           -- primary-label counts
* ``/datasets/{id}/sax?items=a,b&k=``    -- words plus both distances

Errors: 404 unknown dataset/item, 400 malformed query parameter (detail
names the field), 422 when the scheme does not cover the item count.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Mapping

from fastapi import FastAPI, HTTPException, Query, Response
from fastapi.middleware.cors import CORSMiddleware

from .binning import (
    BinnedMap,
    BinningScheme,
    Couple,
    NullMode,
    build_binned_map,
    build_scheme,
    format_couples,
    parse_couples,
)
from .errors import SchemeCoverageError
from .profiles import (
    ClassifierParams,
    NONE_LABEL,
    classify,
    detect_plateaus,
    item_profile,
    profile_histogram,
)
from .render import RenderStyle, render_map_svg
from .sax import equal_frequency_breakpoints, mindist, sax_encode, symbol_euclidean
from .table import TimeTable


def _f9(x: float) -> float:
    return float(f"{x:.9g}")


@dataclass
class DatasetHandle:
    id: str
    table: TimeTable
    default_couples: tuple[Couple, ...]
    _cache: dict[tuple[tuple[Couple, ...], NullMode], BinnedMap] = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock)

    def map_for(self, couples: tuple[Couple, ...], null_mode: NullMode) -> BinnedMap:
        key = (couples, null_mode)
        with self._lock:
            cached = self._cache.get(key)
            if cached is None:
                cached = build_binned_map(self.table, build_scheme(couples), null_mode)
                self._cache[key] = cached
            return cached


def _bad(field_name: str, reason: str) -> HTTPException:
    return HTTPException(status_code=400, detail=f"{field_name}: {reason}")


def _parse_couples_param(raw: str | None, handle: DatasetHandle) -> tuple[Couple, ...]:
    if raw is None:
        return handle.default_couples
    try:
        return parse_couples(raw)
    except ValueError as exc:
        raise _bad("couples", str(exc)) from None


def _parse_null_mode(raw: str | None) -> NullMode:
    if raw is None:
        return NullMode.KEEP_NULLS
    name = raw.strip().upper()
    try:
        return NullMode[name]
    except KeyError:
        raise _bad("null_mode", f"expected KEEP_NULLS or DROP_LAST_BIN, got {raw!r}") from None


def _parse_int(raw: str | None, field_name: str, default: int | None) -> int | None:
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise _bad(field_name, f"expected an integer, got {raw!r}") from None


def _parse_float(raw: str | None, field_name: str, default: float) -> float:
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise _bad(field_name, f"expected a number, got {raw!r}") from None


def _params_from_query(
    scheme: BinningScheme,
    delta_spike: str | None,
    epsilon: str | None,
    lambda_level: str | None,
    rho: str | None,
    equiv_tol: str | None,
) -> ClassifierParams:
    try:
        params = ClassifierParams(
            delta_spike=_parse_int(delta_spike, "delta_spike", 2),
            epsilon=_parse_int(epsilon, "epsilon", 0),
            lambda_level=_parse_int(lambda_level, "lambda", None),
            rho=_parse_float(rho, "rho", 0.5),
            equiv_tol=_parse_int(equiv_tol, "equiv_tol", 1),
        )
    except ValueError as exc:
        raise _bad("params", str(exc)) from None
    return params.resolved(scheme)


def create_app(
    tables: Mapping[str, TimeTable],
    default_couples: tuple[Couple, ...] | None = None,
) -> FastAPI:
    """Build the service over already-loaded tables (read-only)."""
    if not tables:
        raise ValueError("at least one dataset required")
    handles: dict[str, DatasetHandle] = {}
    for ds_id, table in tables.items():
        couples = default_couples or ((len(table.items), 1),)
        handles[ds_id] = DatasetHandle(id=ds_id, table=table, default_couples=couples)

    app = FastAPI(title="timerank service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    def _handle(ds_id: str) -> DatasetHandle:
        try:
            return handles[ds_id]
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown dataset: {ds_id}") from None

    def _map_or_422(handle: DatasetHandle, couples, null_mode) -> BinnedMap:
        try:
            return handle.map_for(couples, null_mode)
        except SchemeCoverageError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None

    @app.get("/datasets")
    def list_datasets():
        return [
            {
                "id": h.id,
                "items": len(h.table.items),
                "time_points": len(h.table.time_points),
                "default_couples": format_couples(h.default_couples),
            }
            for h in handles.values()
        ]

    @app.get("/datasets/{ds_id}/items")
    def search_items(ds_id: str, q: str = ""):
        handle = _handle(ds_id)
        return {"items": [item for item in handle.table.items if item.startswith(q)]}

    @app.get("/datasets/{ds_id}/map")
    def get_map(
        ds_id: str,
        couples: str | None = None,
        null_mode: str | None = None,
        highlight: str | None = None,
    ):
        handle = _handle(ds_id)
        binned = _map_or_422(handle, _parse_couples_param(couples, handle), _parse_null_mode(null_mode))
        trace = None
        if highlight is not None:
            if not binned.has_item(highlight):
                raise HTTPException(status_code=404, detail=f"unknown item: {highlight}")
            trace = list(binned.levels_for_item(highlight))
        columns = []
        for t, label in enumerate(binned.time_labels):
            counts = binned.bin_counts(t)
            columns.append(
                {
                    "time": label,
                    "bins": [
                        {"bin": b, "label": binned.scheme.label_of(b), "count": counts[b]}
                        for b in sorted(counts)
                    ],
                }
            )
        return {
            "dataset": ds_id,
            "couples": format_couples(binned.scheme.couples),
            "null_mode": binned.null_mode.value,
            "item_count": len(binned.items),
            "time_labels": list(binned.time_labels),
            "bin_labels": list(binned.scheme.labels),
            "columns": columns,
            "highlight": None if highlight is None else {"item": highlight, "trace": trace},
        }

    @app.get("/datasets/{ds_id}/map.svg")
    def get_map_svg(
        ds_id: str,
        couples: str | None = None,
        null_mode: str | None = None,
        highlight: str | None = None,
        box_width: str | None = None,
        box_height: str | None = None,
    ):
        handle = _handle(ds_id)
        binned = _map_or_422(handle, _parse_couples_param(couples, handle), _parse_null_mode(null_mode))
        if highlight is not None and not binned.has_item(highlight):
            raise HTTPException(status_code=404, detail=f"unknown item: {highlight}")
        try:
            style = RenderStyle(
                box_width=_parse_int(box_width, "box_width", 30),
                box_height=_parse_int(box_height, "box_height", 5),
            )
        except ValueError as exc:
            raise _bad("style", str(exc)) from None
        svg = render_map_svg(binned, highlight=highlight, style=style)
        return Response(content=svg, media_type="image/svg+xml")

    @app.get("/datasets/{ds_id}/profile/{item}")
    def get_profile(
        ds_id: str,
        item: str,
        couples: str | None = None,
        null_mode: str | None = None,
        delta_spike: str | None = None,
        epsilon: str | None = None,
        lam: str | None = Query(None, alias="lambda"),
        rho: str | None = None,
        equiv_tol: str | None = None,
    ):
        handle = _handle(ds_id)
        binned = _map_or_422(handle, _parse_couples_param(couples, handle), _parse_null_mode(null_mode))
        if not binned.has_item(item):
            raise HTTPException(status_code=404, detail=f"unknown item: {item}")
        params = _params_from_query(binned.scheme, delta_spike, epsilon, lam, rho, equiv_tol)
        profile = item_profile(binned, item)
        plateaus = detect_plateaus(profile, params.equiv_tol)
        if profile.present_count >= 2:
            labels = classify(profile, params)
            matched = sorted(l.value for l in labels.matched)
            primary = labels.primary.value if labels.primary else NONE_LABEL
        else:
            matched, primary = [], NONE_LABEL
        return {
            "dataset": ds_id,
            "item": item,
            "time_labels": list(binned.time_labels),
            "levels": list(profile.levels),
            "mean_level": None if profile.mean_level is None else _f9(profile.mean_level),
            "plateaus": [{"start": p.start, "end": p.end, "level": p.level} for p in plateaus],
            "matched": matched,
            "primary": primary,
            "params": {
                "delta_spike": params.delta_spike,
                "epsilon": params.epsilon,
                "lambda": params.lambda_level,
                "rho": _f9(params.rho),
                "equiv_tol": params.equiv_tol,
            },
        }

    @app.get("/datasets/{ds_id}/histogram")
    def get_histogram(
        ds_id: str,
        couples: str | None = None,
        null_mode: str | None = None,
        delta_spike: str | None = None,
        epsilon: str | None = None,
        lam: str | None = Query(None, alias="lambda"),
        rho: str | None = None,
        equiv_tol: str | None = None,
    ):
        handle = _handle(ds_id)
        binned = _map_or_422(handle, _parse_couples_param(couples, handle), _parse_null_mode(null_mode))
        params = _params_from_query(binned.scheme, delta_spike, epsilon, lam, rho, equiv_tol)
        return {"dataset": ds_id, "counts": profile_histogram(binned, params)}

    @app.get("/datasets/{ds_id}/sax")
    def get_sax(ds_id: str, items: str = "", k: str | None = None):
        handle = _handle(ds_id)
        names = [s for s in items.split(",") if s]
        if len(names) not in (1, 2):
            raise _bad("items", "expected one or two comma-separated item ids")
        for name in names:
            if not handle.table.has_item(name):
                raise HTTPException(status_code=404, detail=f"unknown item: {name}")
        alphabet = _parse_int(k, "k", 8)
        pooled = [v for row in handle.table.values for v in row if v is not None]
        try:
            bp = equal_frequency_breakpoints(pooled, alphabet)
        except ValueError as exc:
            raise _bad("k", str(exc)) from None
        words = {}
        for name in names:
            series = [v for v in handle.table.row(name) if v is not None]
            if not series:
                raise _bad("items", f"item '{name}' has no present values")
            words[name] = sax_encode(series, bp)
        out = {
            "dataset": ds_id,
            "k": alphabet,
            "breakpoints": [_f9(b) for b in bp.betas],
            "words": {name: list(words[name].symbols) for name in names},
        }
        if len(names) == 2:
            a, b = (words[n] for n in names)
            try:
                out["mindist"] = _f9(mindist(a, b, bp))
                out["symbol_euclidean"] = _f9(symbol_euclidean(a, b))
            except ValueError as exc:
                raise _bad("items", str(exc)) from None
        return out

    return app


def run_server(
    tables: Mapping[str, TimeTable],
    host: str = "127.0.0.1",
    port: int = 7878,
    default_couples: tuple[Couple, ...] | None = None,
) -> None:
    """Blocking convenience wrapper around uvicorn."""
    import uvicorn

    uvicorn.run(create_app(tables, default_couples), host=host, port=port, log_level="warning")
