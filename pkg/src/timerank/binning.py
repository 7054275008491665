"""Uneven rank binning: schemes, per-column ranking and the binned map.

A binning scheme is generated from couples ``(upper limit of rank, step)``.
Within each couple the boundaries continue from the previous couple's last
emitted boundary in increments of ``step`` until a boundary at or past the
couple's upper limit is emitted, so e.g. ``(20,1),(100,5),(191,10)`` yields
the 46 bins top-1..top-20, top-25..top-100, top-110..top-200.  The last
boundary may exceed the declared upper limit (200 > 191).

Each time point is ranked independently (competition ranking: ties share
the minimal rank, the next distinct value's rank is 1 + the count of
strictly greater values) and ranks are mapped to bin levels; level 0 is
the top bin.  Under ``DROP_LAST_BIN`` a value whose rank falls in the last
bin is treated as not occurring at that time point.
"""
from __future__ import annotations

import csv
import io
import re
from bisect import bisect_left
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import IO, Iterable, Sequence

from .errors import ParseError, SchemeCoverageError, UnknownItemError
from .table import MISSING_TOKEN, TimeTable, _reader

Couple = tuple[int, int]


class NullMode(Enum):
    """How absent values and the last rank range are plotted."""

    KEEP_NULLS = "KEEP_NULLS"
    DROP_LAST_BIN = "DROP_LAST_BIN"


@dataclass(frozen=True)
class BinningScheme:
    couples: tuple[Couple, ...]
    boundaries: tuple[int, ...]
    labels: tuple[str, ...]

    @property
    def bin_count(self) -> int:
        return len(self.boundaries)

    @property
    def last_boundary(self) -> int:
        return self.boundaries[-1]

    def label_of(self, bin_index: int) -> str:
        return self.labels[bin_index]


def build_scheme(couples: Iterable[Couple]) -> BinningScheme:
    """Generate boundaries and ``top-<K>`` labels from (upper limit, step) couples."""
    couples = tuple((int(u), int(s)) for u, s in couples)
    if not couples:
        raise ValueError("at least one (upper limit, step) couple required")
    for u, s in couples:
        if u < 1:
            raise ValueError(f"upper limit must be positive, got {u}")
        if s < 1:
            raise ValueError(f"step must be positive, got {s}")
    uppers = [u for u, _ in couples]
    if any(b <= a for a, b in zip(uppers, uppers[1:])):
        raise ValueError(f"upper limits must be strictly increasing, got {uppers}")

    boundaries: list[int] = []
    prev = 0
    for upper, step in couples:
        b = prev + step
        boundaries.append(b)
        while b < upper:
            b += step
            boundaries.append(b)
        prev = b
    return BinningScheme(
        couples=couples,
        boundaries=tuple(boundaries),
        labels=tuple(f"top-{b}" for b in boundaries),
    )


_COUPLE_RE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")
_COUPLES_SPEC_RE = re.compile(
    r"^\s*\(\s*\d+\s*,\s*\d+\s*\)\s*(?:,\s*\(\s*\d+\s*,\s*\d+\s*\)\s*)*$"
)


def parse_couples(text: str) -> tuple[Couple, ...]:
    """Parse the literal couples syntax ``(20,1),(100,5),(191,10)``."""
    if not _COUPLES_SPEC_RE.match(text):
        raise ValueError(f"cannot parse couples spec {text!r}; expected e.g. (20,1),(100,5)")
    return tuple((int(u), int(s)) for u, s in _COUPLE_RE.findall(text))


def format_couples(couples: Iterable[Couple]) -> str:
    return ",".join(f"({u},{s})" for u, s in couples)


@dataclass(frozen=True)
class RankedColumn:
    """Competition ranks for the present items of one time point."""

    time_label: str
    ranks: dict[str, int]


def rank_column(values: Sequence[tuple[str, float]], time_label: str = "") -> RankedColumn:
    """Rank items decreasingly by value; ties share the minimal rank."""
    seen: set[str] = set()
    for item, _ in values:
        if item in seen:
            raise ValueError(f"duplicate item in column: '{item}'")
        seen.add(item)
    ordered = sorted(values, key=lambda pair: -pair[1])
    ranks: dict[str, int] = {}
    rank = 0
    prev: float | None = None
    for pos, (item, v) in enumerate(ordered, start=1):
        if v != prev:
            rank = pos
            prev = v
        ranks[item] = rank
    return RankedColumn(time_label=time_label, ranks=ranks)


def bin_of_rank(scheme: BinningScheme, rank: int) -> int:
    """Index of the smallest boundary >= rank (0 = top bin)."""
    if rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank}")
    i = bisect_left(scheme.boundaries, rank)
    if i == len(scheme.boundaries):
        raise SchemeCoverageError(
            f"rank {rank} is beyond the scheme's last boundary {scheme.last_boundary}"
        )
    return i


@dataclass(frozen=True)
class BinnedMap:
    """Per time point, each present item's bin level; the map's data model.

    ``cells[t][i]`` is the bin index of item ``items[i]`` at time point
    ``time_labels[t]``, or ``None`` where the item is absent.
    """

    scheme: BinningScheme
    items: tuple[str, ...]
    time_labels: tuple[str, ...]
    cells: tuple[tuple[int | None, ...], ...]
    null_mode: NullMode

    @cached_property
    def _item_index(self) -> dict[str, int]:
        return {item: i for i, item in enumerate(self.items)}

    def has_item(self, item: str) -> bool:
        return item in self._item_index

    def levels_for_item(self, item: str) -> tuple[int | None, ...]:
        try:
            i = self._item_index[item]
        except KeyError:
            raise UnknownItemError(f"unknown item: '{item}'") from None
        return tuple(col[i] for col in self.cells)

    def occupied_bins(self, t_index: int) -> list[int]:
        """Sorted distinct bin indices occupied at one time point."""
        return sorted({b for b in self.cells[t_index] if b is not None})

    def bin_counts(self, t_index: int) -> dict[int, int]:
        counts: dict[int, int] = {}
        for b in self.cells[t_index]:
            if b is not None:
                counts[b] = counts.get(b, 0) + 1
        return counts

    def to_csv(self, sep: str = ",") -> str:
        """Text matrix of bin labels (``NA`` = absent), one row per item."""
        buf = io.StringIO()
        buf.write(f"# couples: {format_couples(self.scheme.couples)}\n")
        writer = csv.writer(buf, delimiter=sep, lineterminator="\n")
        writer.writerow(["id", *self.time_labels])
        for i, item in enumerate(self.items):
            row = [item]
            for t in range(len(self.time_labels)):
                b = self.cells[t][i]
                row.append(MISSING_TOKEN if b is None else self.scheme.label_of(b))
            writer.writerow(row)
        return buf.getvalue()


def required_coverage(table: TimeTable) -> int:
    """Largest per-column present-item count; the scheme's last boundary must reach it."""
    return max(len(table.column(t)) for t in range(len(table.time_points)))


def build_binned_map(
    table: TimeTable,
    scheme: BinningScheme,
    null_mode: NullMode = NullMode.KEEP_NULLS,
) -> BinnedMap:
    """Rank every time point independently and map ranks through the scheme."""
    needed = required_coverage(table)
    if needed > scheme.last_boundary:
        raise SchemeCoverageError(
            f"scheme covers ranks up to {scheme.last_boundary} but a column has "
            f"{needed} present items; add a couple covering the item count"
        )
    last = scheme.bin_count - 1
    columns: list[tuple[int | None, ...]] = []
    for t, label in enumerate(table.time_points):
        ranked = rank_column(table.column(t), label)
        cells: list[int | None] = []
        for item, row in zip(table.items, table.values):
            if row[t] is None:
                cells.append(None)
                continue
            b = bin_of_rank(scheme, ranked.ranks[item])
            if null_mode is NullMode.DROP_LAST_BIN and b == last:
                cells.append(None)
            else:
                cells.append(b)
        columns.append(tuple(cells))
    return BinnedMap(
        scheme=scheme,
        items=table.items,
        time_labels=table.time_points,
        cells=tuple(columns),
        null_mode=null_mode,
    )


def parse_map_csv(source: str | IO[str], sep: str = ",") -> BinnedMap:
    """Read a map serialized by :meth:`BinnedMap.to_csv`."""
    text = source if isinstance(source, str) else source.read()
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# couples:"):
        raise ParseError("missing '# couples:' header line")
    scheme = build_scheme(parse_couples(lines[0].split(":", 1)[1]))
    label_index = {label: i for i, label in enumerate(scheme.labels)}

    rows = [row for row in _reader("\n".join(lines[1:]), sep) if row]
    if len(rows) < 2:
        raise ParseError("map needs a header row and at least one item row")
    time_labels = tuple(rows[0][1:])
    items: list[str] = []
    columns: list[list[int | None]] = [[] for _ in time_labels]
    for rownum, row in enumerate(rows[1:], start=3):
        if len(row) != len(time_labels) + 1:
            raise ParseError(f"row {rownum}: expected {len(time_labels) + 1} cells, got {len(row)}")
        item = row[0]
        if item in items:
            raise ParseError(f"row {rownum}: duplicate item id '{item}'")
        items.append(item)
        for t, cell in enumerate(row[1:]):
            cell = cell.strip()
            if cell == MISSING_TOKEN or cell == "":
                columns[t].append(None)
            elif cell in label_index:
                columns[t].append(label_index[cell])
            else:
                raise ParseError(f"row {rownum}: unknown bin label {cell!r}")
    return BinnedMap(
        scheme=scheme,
        items=tuple(items),
        time_labels=time_labels,
        cells=tuple(tuple(col) for col in columns),
        null_mode=NullMode.KEEP_NULLS,
    )
