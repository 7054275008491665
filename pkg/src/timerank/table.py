"""Time-table model and parsers for the two supported text formats.

A time table is an item x time grid of optional quantitative values.  Two
text encodings are accepted:

* ``wide``  -- one header row ``id,<t1>,...,<tn>``, then one row per item
  with one cell per time point.  ``NA`` or an empty cell marks a missing
  value.
* ``pairs`` -- column-based: each time point owns a pair of columns
  ``(item id, value)``; the header repeats the time label over both
  columns of its pair.  Per-time-point lists may differ in length and
  order; the item set is the union over all pairs.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from functools import cached_property
from typing import IO, Iterator

from .errors import ParseError

MISSING_TOKEN = "NA"


@dataclass(frozen=True)
class TimeTable:
    """Immutable item x time grid; ``None`` cells are absent values.

    ``values`` holds one row per item (in ``items`` order) with one cell
    per time point (in ``time_points`` order).  Instances are validated on
    construction and safe to share across threads.
    """

    items: tuple[str, ...]
    time_points: tuple[str, ...]
    values: tuple[tuple[float | None, ...], ...]

    def __post_init__(self) -> None:
        if len(self.items) < 1:
            raise ValueError("a time table needs at least one item")
        if len(self.time_points) < 2:
            raise ValueError("a time table needs at least two time points")
        if any(not item for item in self.items):
            raise ValueError("item identifiers must be non-empty")
        if len(set(self.items)) != len(self.items):
            raise ValueError("item identifiers must be unique")
        if len(set(self.time_points)) != len(self.time_points):
            raise ValueError("time labels must be unique")
        if len(self.values) != len(self.items):
            raise ValueError("one value row per item required")
        width = len(self.time_points)
        for item, row in zip(self.items, self.values):
            if len(row) != width:
                raise ValueError(f"item '{item}': expected {width} cells, got {len(row)}")
            for v in row:
                if v is not None and not math.isfinite(v):
                    raise ValueError(f"item '{item}': non-finite value {v!r}")

    @cached_property
    def _item_index(self) -> dict[str, int]:
        return {item: i for i, item in enumerate(self.items)}

    def has_item(self, item: str) -> bool:
        return item in self._item_index

    def row(self, item: str) -> tuple[float | None, ...]:
        try:
            return self.values[self._item_index[item]]
        except KeyError:
            raise KeyError(f"unknown item: {item!r}") from None

    def value(self, item: str, time_point: str) -> float | None:
        return self.row(item)[self.time_points.index(time_point)]

    def column(self, t_index: int) -> list[tuple[str, float]]:
        """Present (item, value) entries for one time point."""
        out = []
        for item, row in zip(self.items, self.values):
            v = row[t_index]
            if v is not None:
                out.append((item, v))
        return out

    @property
    def absent_count(self) -> int:
        return sum(1 for row in self.values for v in row if v is None)

    def sorted_by_item(self) -> "TimeTable":
        order = sorted(range(len(self.items)), key=lambda i: self.items[i])
        return TimeTable(
            items=tuple(self.items[i] for i in order),
            time_points=self.time_points,
            values=tuple(self.values[i] for i in order),
        )

    def to_wide_csv(self, sep: str = ",") -> str:
        """Serialize to the wide format; parsing the result round-trips."""
        buf = io.StringIO()
        writer = csv.writer(buf, delimiter=sep, lineterminator="\n")
        writer.writerow(["id", *self.time_points])
        for item, row in zip(self.items, self.values):
            writer.writerow([item] + [MISSING_TOKEN if v is None else repr(v) for v in row])
        return buf.getvalue()


@dataclass(frozen=True)
class ValidationReport:
    """Counts and warnings for a table; never mutates it.

    ``duplicate_warnings`` flags item ids that collide case-insensitively
    (exact duplicates are already rejected at parse time).
    """

    item_count: int
    time_point_count: int
    absent_count: int
    duplicate_warnings: tuple[str, ...]


def _reader(source: str | IO[str], sep: str) -> Iterator[list[str]]:
    stream = io.StringIO(source) if isinstance(source, str) else source
    return csv.reader(stream, delimiter=sep)


def _parse_cell(cell: str, where: str) -> float | None:
    cell = cell.strip()
    if cell == "" or cell == MISSING_TOKEN:
        return None
    try:
        v = float(cell)
    except ValueError:
        raise ParseError(f"{where}: cannot parse {cell!r} as a number") from None
    if not math.isfinite(v):
        raise ParseError(f"{where}: non-finite value {cell!r}")
    return v


def parse_wide_table(source: str | IO[str], sep: str = ",") -> TimeTable:
    """Parse the wide format: header ``id,<t1>,...,<tn>``, one row per item.

    Item ids and time labels are taken verbatim so serialize/parse
    round-trips exactly; value cells tolerate surrounding whitespace.
    """
    rows = [row for row in _reader(source, sep) if row]
    if not rows:
        raise ParseError("empty input")
    header = rows[0]
    if len(header) < 3:
        raise ParseError("header must name an id column and at least two time points")
    time_points = tuple(header[1:])
    if any(not t for t in time_points):
        raise ParseError("empty time label in header")

    items: list[str] = []
    seen: set[str] = set()
    values: list[tuple[float | None, ...]] = []
    for rownum, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ParseError(f"row {rownum}: expected {len(header)} cells, got {len(row)}")
        item = row[0]
        if not item:
            raise ParseError(f"row {rownum}: empty item id")
        if item in seen:
            raise ParseError(f"row {rownum}: duplicate item id '{item}'")
        seen.add(item)
        items.append(item)
        values.append(
            tuple(
                _parse_cell(cell, f"row {rownum}, column '{label}'")
                for label, cell in zip(time_points, row[1:])
            )
        )
    return TimeTable(tuple(items), time_points, tuple(values))


def parse_column_pairs(source: str | IO[str], sep: str = ",") -> TimeTable:
    """Parse the paired format: one (item, value) column pair per time point.

    The item set is the union of ids over all pairs; an item missing from a
    time point's list is absent there.  Items are sorted lexicographically
    for determinism.
    """
    rows = [row for row in _reader(source, sep) if row]
    if not rows:
        raise ParseError("empty input")
    header = rows[0]
    if len(header) % 2 != 0:
        raise ParseError(f"odd column count ({len(header)}): each time point needs an (id, value) column pair")
    n = len(header) // 2
    if n < 2:
        raise ParseError("at least two time points required")
    time_points = []
    for j in range(n):
        left, right = header[2 * j].strip(), header[2 * j + 1].strip()
        if left != right:
            raise ParseError(f"column pair {j + 1}: header labels differ ('{left}' vs '{right}')")
        if not left:
            raise ParseError(f"column pair {j + 1}: empty time label")
        time_points.append(left)
    if len(set(time_points)) != n:
        raise ParseError("time labels must be unique")

    per_point: list[dict[str, float]] = [{} for _ in range(n)]
    for rownum, row in enumerate(rows[1:], start=2):
        if len(row) > 2 * n:
            raise ParseError(f"row {rownum}: expected at most {2 * n} cells, got {len(row)}")
        row = row + [""] * (2 * n - len(row))
        for j, label in enumerate(time_points):
            item = row[2 * j].strip()
            cell = row[2 * j + 1].strip()
            if not item:
                if cell:
                    raise ParseError(f"row {rownum}: value {cell!r} without an item id in '{label}'")
                continue
            if item in per_point[j]:
                raise ParseError(f"row {rownum}: duplicate item '{item}' in time point '{label}'")
            v = _parse_cell(cell, f"row {rownum}, time point '{label}'")
            if v is None:
                raise ParseError(f"row {rownum}: missing value for item '{item}' in '{label}'")
            per_point[j][item] = v

    items = tuple(sorted(set().union(*(d.keys() for d in per_point))))
    if not items:
        raise ParseError("no items found")
    values = tuple(tuple(per_point[j].get(item) for j in range(n)) for item in items)
    return TimeTable(items, tuple(time_points), values)


def validate_table(table: TimeTable) -> ValidationReport:
    """Build a report of counts and case-collision warnings."""
    by_fold: dict[str, list[str]] = {}
    for item in table.items:
        by_fold.setdefault(item.casefold(), []).append(item)
    warnings = tuple(
        "items differ only by case: " + ", ".join(group)
        for group in by_fold.values()
        if len(group) > 1
    )
    return ValidationReport(
        item_count=len(table.items),
        time_point_count=len(table.time_points),
        absent_count=table.absent_count,
        duplicate_warnings=warnings,
    )
