/**
 * Pure render models: map JSON in, box/panel geometry out. No DOM here,
 * so the exact visual contract (one highlighted box per column where the
 * selected item occurs) is testable headless; app.ts turns models into
 * SVG elements.
 */
import type { MapResponse, ProfileResponse } from "./api.js";

export interface BoxStyle {
  boxWidth: number;
  boxHeight: number;
  hGap: number;
  vGap: number;
  highlightColor: string;
  contextColor: string;
}

export const DEFAULT_BOX_STYLE: BoxStyle = {
  boxWidth: 30,
  boxHeight: 5,
  hGap: 2,
  vGap: 2,
  highlightColor: "#000000",
  contextColor: "#808080",
};

export interface Box {
  x: number;
  y: number;
  width: number;
  height: number;
  fill: string;
  highlighted: boolean;
  /** Tooltip text: bin label plus how many items share the box. */
  title: string;
  time: string;
  bin: number;
}

export interface MapModel {
  width: number;
  height: number;
  boxes: Box[];
  columnLabels: { x: number; text: string }[];
}

export function buildMapModel(map: MapResponse, style: BoxStyle = DEFAULT_BOX_STYLE): MapModel {
  const colPitch = style.boxWidth + style.hGap;
  const rowPitch = style.boxHeight + style.vGap;
  const trace = map.highlight?.trace ?? null;
  const boxes: Box[] = [];
  const columnLabels: MapModel["columnLabels"] = [];
  map.columns.forEach((column, t) => {
    const x = style.hGap + t * colPitch;
    columnLabels.push({ x: x + style.boxWidth / 2, text: column.time });
    const highlightBin = trace === null ? null : trace[t];
    for (const cell of column.bins) {
      const highlighted = highlightBin !== null && cell.bin === highlightBin;
      boxes.push({
        x,
        y: style.vGap + cell.bin * rowPitch,
        width: style.boxWidth,
        height: style.boxHeight,
        fill: highlighted ? style.highlightColor : style.contextColor,
        highlighted,
        title: `${cell.label} · ${cell.count} item${cell.count === 1 ? "" : "s"}`,
        time: column.time,
        bin: cell.bin,
      });
    }
  });
  return {
    width: style.hGap + map.columns.length * colPitch,
    height: style.vGap + map.bin_labels.length * rowPitch,
    boxes,
    columnLabels,
  };
}

export function highlightedBoxesPerColumn(model: MapModel): Map<string, number> {
  const counts = new Map<string, number>();
  for (const box of model.boxes) {
    if (box.highlighted) {
      counts.set(box.time, (counts.get(box.time) ?? 0) + 1);
    }
  }
  return counts;
}

export interface PanelModel {
  item: string;
  primary: string;
  /** Matched labels, primary first, the rest alphabetical. */
  labels: { name: string; primary: boolean }[];
  meanLevel: number | null;
  /** Plateau spans as time-label ranges for the overlay. */
  plateaus: { from: string; to: string; level: number }[];
  levels: { time: string; level: number | null }[];
}

export function buildPanelModel(profile: ProfileResponse): PanelModel {
  const others = profile.matched.filter((name) => name !== profile.primary).sort();
  const labels = (profile.primary !== "NONE" ? [profile.primary] : [])
    .concat(others)
    .map((name) => ({ name, primary: name === profile.primary }));
  return {
    item: profile.item,
    primary: profile.primary,
    labels,
    meanLevel: profile.mean_level,
    plateaus: profile.plateaus.map((p) => ({
      from: profile.time_labels[p.start] ?? String(p.start),
      to: profile.time_labels[p.end] ?? String(p.end),
      level: p.level,
    })),
    levels: profile.time_labels.map((time, t) => ({ time, level: profile.levels[t] ?? null })),
  };
}
