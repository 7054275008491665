"""Deterministic SVG output for maps and single-item profile strips.

One column per time point (oldest leftmost); within a column one box per
occupied bin, stacked top (bin 0) to bottom.  Only occupied bins are
drawn, so absences read as holes.  The box holding the highlighted item
is filled with the highlight color, everything else with the context
color.  Element order is stable (background, boxes column-major
top-to-bottom, labels) so identical inputs give byte-identical documents.
"""
from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape, quoteattr

from .binning import BinnedMap, NullMode, build_binned_map, build_scheme
from .errors import UnknownItemError
from .profiles import LevelProfile, NONE_LABEL, ProfileLabels
from .table import TimeTable


@dataclass(frozen=True)
class RenderStyle:
    box_width: int = 30
    box_height: int = 5
    h_gap: int = 2
    v_gap: int = 2
    highlight_color: str = "black"
    context_color: str = "#808080"
    background: str = "white"
    label_font_size: int = 10

    def __post_init__(self) -> None:
        if self.box_width <= 0 or self.box_height <= 0:
            raise ValueError("box dimensions must be positive")
        if self.h_gap < 0 or self.v_gap < 0 or self.label_font_size < 0:
            raise ValueError("gaps and font size must be >= 0")


def _document(width: int, height: int, body: list[str]) -> str:
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}">\n'
    )
    return head + "".join(body) + "</svg>\n"


def _rect(x: int, y: int, w: int, h: int, fill: str) -> str:
    return f'<rect x="{x}" y="{y}" width="{w}" height="{h}" fill={quoteattr(fill)}/>\n'


def render_map_svg(
    binned: BinnedMap,
    highlight: str | None = None,
    style: RenderStyle | None = None,
) -> str:
    """Draw the full map; the highlighted item's box per column is blackened."""
    style = style or RenderStyle()
    if highlight is not None and not binned.has_item(highlight):
        raise UnknownItemError(f"unknown highlight item: '{highlight}'")
    trace = binned.levels_for_item(highlight) if highlight is not None else None

    n_cols = len(binned.time_labels)
    n_bins = binned.scheme.bin_count
    col_pitch = style.box_width + style.h_gap
    row_pitch = style.box_height + style.v_gap
    width = style.h_gap + n_cols * col_pitch
    height = style.v_gap + n_bins * row_pitch
    label_area = style.label_font_size + style.v_gap if style.label_font_size else 0

    body: list[str] = []
    if style.background:
        body.append(_rect(0, 0, width, height + label_area, style.background))
    for t in range(n_cols):
        x = style.h_gap + t * col_pitch
        hi_bin = trace[t] if trace is not None else None
        for b in binned.occupied_bins(t):
            y = style.v_gap + b * row_pitch
            fill = style.highlight_color if b == hi_bin else style.context_color
            body.append(_rect(x, y, style.box_width, style.box_height, fill))
    if style.label_font_size:
        ty = height + style.label_font_size
        for t, label in enumerate(binned.time_labels):
            tx = style.h_gap + t * col_pitch + style.box_width // 2
            body.append(
                f'<text x="{tx}" y="{ty}" font-size="{style.label_font_size}" '
                f'text-anchor="middle">{escape(label)}</text>\n'
            )
    return _document(width, height + label_area, body)


def render_unbinned_svg(
    table: TimeTable,
    highlight: str | None = None,
    style: RenderStyle | None = None,
) -> str:
    """Map with the identity scheme (one bin per rank): one box per present item."""
    scheme = build_scheme(((len(table.items), 1),))
    binned = build_binned_map(table, scheme, NullMode.KEEP_NULLS)
    return render_map_svg(binned, highlight=highlight, style=style)


def render_profile_strip(
    profile: LevelProfile,
    labels: ProfileLabels,
    style: RenderStyle | None = None,
) -> str:
    """Miniature one-item strip with the primary label as caption."""
    style = style or RenderStyle()
    present = [lv for lv in profile.levels if lv is not None]
    rows = (max(present) + 1) if present else 1
    n_cols = len(profile.levels)
    col_pitch = style.box_width + style.h_gap
    row_pitch = style.box_height + style.v_gap
    width = style.h_gap + n_cols * col_pitch
    height = style.v_gap + rows * row_pitch
    label_area = style.label_font_size + style.v_gap if style.label_font_size else 0

    body: list[str] = []
    if style.background:
        body.append(_rect(0, 0, width, height + label_area, style.background))
    for t, lv in enumerate(profile.levels):
        if lv is None:
            continue
        x = style.h_gap + t * col_pitch
        y = style.v_gap + lv * row_pitch
        body.append(_rect(x, y, style.box_width, style.box_height, style.highlight_color))
    if style.label_font_size:
        caption = labels.primary.value if labels.primary else NONE_LABEL
        body.append(
            f'<text x="{style.h_gap}" y="{height + style.label_font_size}" '
            f'font-size="{style.label_font_size}">{escape(caption)}</text>\n'
        )
    return _document(width, height + label_area, body)
