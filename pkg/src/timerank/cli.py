"""Command-line entry point wiring the library end to end.

Subcommands: ``scheme``, ``map``, ``classify``, ``hist``, ``sax``,
``gen``, ``serve``.  Outputs go to stdout unless a path flag is given.
Exit codes: 0 success, 1 usage error, 2 data error.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import fields, replace
from pathlib import Path

from .binning import (
    BinnedMap,
    NullMode,
    build_binned_map,
    build_scheme,
    parse_couples,
    parse_map_csv,
)
from .errors import TimerankError, UnknownItemError
from .generator import GeneratorSpec, generate_random_table
from .profiles import (
    ClassifierParams,
    NONE_LABEL,
    classify,
    detect_plateaus,
    item_profile,
    profile_histogram,
    write_histogram_csv,
)
from .render import RenderStyle, render_map_svg
from .sax import (
    equal_frequency_breakpoints,
    equal_width_breakpoints,
    format_breakpoints,
    format_word,
    mindist,
    sax_encode,
    symbol_euclidean,
)
from .table import TimeTable, parse_column_pairs, parse_wide_table

STYLE_ENV_VAR = "TIMERANK_STYLE"

_NULL_MODES = {"keep": NullMode.KEEP_NULLS, "drop-last": NullMode.DROP_LAST_BIN}
_SEPS = {"comma": ",", "tab": "\t"}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # spec exit codes: usage errors are 1, not argparse's default 2
    def error(self, message):
        raise _UsageError(message)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_table(args) -> TimeTable:
    text = _read_text(args.input)
    sep = _SEPS[args.sep]
    if args.format == "pairs":
        return parse_column_pairs(text, sep)
    return parse_wide_table(text, sep)


def _scheme_for(args, table: TimeTable):
    if args.couples:
        return build_scheme(parse_couples(args.couples))
    # identity binning (one bin per rank) when no couples are given
    return build_scheme(((len(table.items), 1),))


def _params_from(args, scheme) -> ClassifierParams:
    params = ClassifierParams(
        delta_spike=args.delta_spike,
        epsilon=args.epsilon,
        lambda_level=args.lambda_level,
        rho=args.rho,
        equiv_tol=args.equiv_tol,
    )
    return params.resolved(scheme)


def load_style(path: str) -> RenderStyle:
    """Read a key=value style file (see RenderStyle fields)."""
    style = RenderStyle()
    int_fields = {f.name for f in fields(RenderStyle) if f.type == "int"}
    known = {f.name for f in fields(RenderStyle)}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in known:
            raise ValueError(f"{path}:{lineno}: unknown style key '{key}'")
        style = replace(style, **{key: int(value) if key in int_fields else value})
    return style


def _style_from_env() -> RenderStyle:
    path = os.environ.get(STYLE_ENV_VAR)
    return load_style(path) if path else RenderStyle()


def cmd_scheme(args) -> int:
    scheme = build_scheme(parse_couples(args.couples))
    out = "".join(f"{b},{label}\n" for b, label in zip(scheme.boundaries, scheme.labels))
    _write_text(args.out, out)
    return 0


def cmd_gen(args) -> int:
    table = generate_random_table(
        GeneratorSpec(item_count=args.items, time_points=args.timepoints, seed=args.seed)
    )
    _write_text(args.out, table.to_wide_csv())
    return 0


def cmd_map(args) -> int:
    table = _load_table(args)
    scheme = _scheme_for(args, table)
    binned = build_binned_map(table, scheme, _NULL_MODES[args.null_mode])
    if args.highlight is not None and not binned.has_item(args.highlight):
        raise UnknownItemError(f"unknown highlight item: '{args.highlight}'")
    if args.svg:
        svg = render_map_svg(binned, highlight=args.highlight, style=_style_from_env())
        _write_text(args.svg, svg)
    if args.svg is None or args.out is not None:
        # CSV goes to stdout unless the run is SVG-only
        _write_text(args.out, binned.to_csv())
    return 0


def _load_map(args) -> BinnedMap:
    text = _read_text(args.input)
    if text.startswith("# couples:"):
        return parse_map_csv(text, _SEPS[args.sep])
    table = parse_wide_table(text, _SEPS[args.sep]) if args.format == "wide" else parse_column_pairs(text, _SEPS[args.sep])
    scheme = _scheme_for(args, table)
    return build_binned_map(table, scheme, _NULL_MODES[args.null_mode])


def cmd_classify(args) -> int:
    binned = _load_map(args)
    params = _params_from(args, binned.scheme)
    if args.item is not None:
        profile = item_profile(binned, args.item)
        if profile.present_count < 2:
            _write_text(args.out, f"{NONE_LABEL}\nmatched:\n")
            return 0
        labels = classify(profile, params)
        plateaus = detect_plateaus(profile, params.equiv_tol)
        lines = [
            labels.primary.value if labels.primary else NONE_LABEL,
            "matched: " + ",".join(l.value for l in sorted(labels.matched, key=lambda l: l.value)),
            "levels: " + ",".join("NA" if lv is None else str(lv) for lv in profile.levels),
            "plateaus: " + ";".join(f"[{p.start},{p.end}]@{p.level}" for p in plateaus),
        ]
        _write_text(args.out, "\n".join(lines) + "\n")
        return 0
    lines = ["item,primary,matched"]
    for item in binned.items:
        profile = item_profile(binned, item)
        if profile.present_count < 2:
            lines.append(f"{item},{NONE_LABEL},")
            continue
        labels = classify(profile, params)
        primary = labels.primary.value if labels.primary else NONE_LABEL
        matched = ";".join(l.value for l in sorted(labels.matched, key=lambda l: l.value))
        lines.append(f"{item},{primary},{matched}")
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_hist(args) -> int:
    binned = _load_map(args)
    counts = profile_histogram(binned, _params_from(args, binned.scheme))
    _write_text(args.out, write_histogram_csv(counts))
    return 0


def cmd_sax(args) -> int:
    table = _load_table(args)
    names = [s for s in args.items.split(",") if s]
    if len(names) not in (1, 2):
        raise ValueError(f"--items takes one or two comma-separated ids, got {args.items!r}")
    pooled = [v for row in table.values for v in row if v is not None]
    if args.cuts == "equal-width":
        bp = equal_width_breakpoints(min(pooled), max(pooled), args.k)
    else:
        bp = equal_frequency_breakpoints(pooled, args.k)
    words = {}
    for name in names:
        series = [v for v in table.row(name) if v is not None]
        if not series:
            raise ValueError(f"item '{name}' has no present values")
        words[name] = sax_encode(series, bp)
    lines = [f"breakpoints: {format_breakpoints(bp)}"]
    for name in names:
        lines.append(f"word {name}: {format_word(words[name])}")
    if len(names) == 2:
        a, b = (words[n] for n in names)
        lines.append(f"mindist: {mindist(a, b, bp):.9g}")
        lines.append(f"symbol_euclidean: {symbol_euclidean(a, b):.9g}")
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    tables = {}
    for path in args.input:
        text = _read_text(path)
        sep = _SEPS[args.sep]
        table = parse_column_pairs(text, sep) if args.format == "pairs" else parse_wide_table(text, sep)
        tables[Path(path).stem] = table
    default_couples = parse_couples(args.couples) if args.couples else None
    app = create_app(tables, default_couples=default_couples)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--in", dest="input", required=True, help="input file ('-' for stdin)")
    p.add_argument("--format", choices=("wide", "pairs"), default="wide", help="input table format")
    p.add_argument("--sep", choices=tuple(_SEPS), default="comma", help="field separator")


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--couples", help='binning couples, e.g. "(20,1),(100,5),(191,10)"')
    p.add_argument("--null-mode", choices=tuple(_NULL_MODES), default="keep", help="absent-value handling")
    p.add_argument("--delta-spike", type=int, default=2, help="dominance gap in bin levels")
    p.add_argument("--epsilon", type=int, default=0, help="monotone-trend tolerance in bin levels")
    p.add_argument("--lambda", dest="lambda_level", type=int, default=None,
                   help="prominence threshold bin (default: bin of rank 20)")
    p.add_argument("--rho", type=float, default=0.5, help="majority fraction for EMERGING")
    p.add_argument("--equiv-tol", type=int, default=1, help="plateau equivalence tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="timerank", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scheme", help="print boundaries and labels for a couples spec")
    p.add_argument("--couples", required=True, help='e.g. "(20,1),(100,5),(191,10)"')
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_scheme)

    p = sub.add_parser("gen", help="emit a seeded random table (wide CSV)")
    p.add_argument("--items", type=int, default=5000)
    p.add_argument("--timepoints", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("map", help="build the binned map (CSV and/or SVG)")
    _add_input_flags(p)
    p.add_argument("--couples", help="binning couples (default: one bin per rank)")
    p.add_argument("--null-mode", choices=tuple(_NULL_MODES), default="keep")
    p.add_argument("--highlight", help="item to blacken in the SVG")
    p.add_argument("--out", help="map CSV output path (default stdout)")
    p.add_argument("--svg", help="also write an SVG rendering to this path")
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("classify", help="label item trajectories (table or map input)")
    _add_input_flags(p)
    _add_param_flags(p)
    p.add_argument("--item", help="classify a single item and print its full matched set")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("hist", help="profile histogram CSV (label,count)")
    _add_input_flags(p)
    _add_param_flags(p)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_hist)

    p = sub.add_parser("sax", help="encode items and compare two of them")
    _add_input_flags(p)
    p.add_argument("--items", required=True, help="one or two comma-separated item ids")
    p.add_argument("--k", type=int, default=8, help="alphabet size")
    p.add_argument("--cuts", choices=("equal-frequency", "equal-width"), default="equal-frequency")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_sax)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--in", dest="input", action="append", required=True, help="dataset file (repeatable)")
    p.add_argument("--format", choices=("wide", "pairs"), default="wide")
    p.add_argument("--sep", choices=tuple(_SEPS), default="comma")
    p.add_argument("--couples", help="default binning couples for all datasets")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=7878)
    p.set_defaults(func=cmd_serve)

    return parser


def run(argv: list[str]) -> int:
    """Run one command; returns the exit status instead of exiting."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help prints and exits 0
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (TimerankError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
