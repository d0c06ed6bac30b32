// Preview timeline: lay events out on one lane per sound, block extents
// proportional to their wholes, then paint onto a canvas.

import { fracToNumber } from "./api";
import type { EventJson } from "./api";

export interface Block {
  lane: number;
  x0: number; // normalized 0..1 across the rendered span
  x1: number;
  label: string;
  onset: boolean;
  solid: boolean; // false for continuous (whole-less) events
}

export interface Layout {
  lanes: string[];
  blocks: Block[];
}

export function laneKey(value: Record<string, unknown>): string {
  if (typeof value.sound === "string") return value.sound;
  const parts = Object.entries(value).map(([k, v]) => `${k}=${v}`);
  return parts.join(" ") || "~";
}

/** Pure layout over [begin, end) cycles; extents come from event wholes. */
export function layout(events: EventJson[], begin = 0, end = 2): Layout {
  const lanes: string[] = [];
  const blocks: Block[] = [];
  const width = end - begin;
  for (const e of events) {
    const key = laneKey(e.value);
    let lane = lanes.indexOf(key);
    if (lane < 0) {
      lane = lanes.length;
      lanes.push(key);
    }
    const ext = e.whole ?? e.active;
    const x0 = (fracToNumber(ext.begin) - begin) / width;
    const x1 = (fracToNumber(ext.end) - begin) / width;
    blocks.push({
      lane,
      x0: Math.max(0, x0),
      x1: Math.min(1, x1),
      label: key,
      onset: e.whole !== null && e.whole.begin === e.active.begin,
      solid: e.whole !== null,
    });
  }
  return { lanes, blocks };
}

export const LANE_COLORS = [
  "#4fc3f7", "#ffb74d", "#aed581", "#f06292", "#ba68c8",
  "#4db6ac", "#fff176", "#a1887f", "#90a4ae", "#e57373",
];

export function drawTimeline(canvas: HTMLCanvasElement, lay: Layout, cycles = 2): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const w = canvas.width;
  const h = canvas.height;
  ctx.clearRect(0, 0, w, h);
  ctx.fillStyle = "#14171c";
  ctx.fillRect(0, 0, w, h);

  // cycle boundaries
  ctx.strokeStyle = "#2c323c";
  ctx.fillStyle = "#565f6e";
  ctx.font = "10px monospace";
  for (let c = 0; c <= cycles; c++) {
    const x = (c / cycles) * w;
    ctx.beginPath();
    ctx.moveTo(x, 0);
    ctx.lineTo(x, h);
    ctx.stroke();
    if (c < cycles) ctx.fillText(`cycle ${c}`, x + 4, 10);
  }

  if (lay.lanes.length === 0) return;
  const laneH = h / lay.lanes.length;
  const pad = Math.min(6, laneH * 0.15);
  for (const b of lay.blocks) {
    const color = LANE_COLORS[b.lane % LANE_COLORS.length];
    const y = b.lane * laneH + pad;
    const bh = laneH - 2 * pad;
    const x = b.x0 * w;
    const bw = Math.max(1, (b.x1 - b.x0) * w - 1);
    ctx.globalAlpha = b.solid ? 0.9 : 0.45;
    ctx.fillStyle = color;
    ctx.fillRect(x, y, bw, bh);
    ctx.globalAlpha = 1;
    if (b.onset) {
      ctx.fillStyle = "#fff";
      ctx.fillRect(x, y, 2, bh);
    }
    if (bw > 18) {
      ctx.fillStyle = "#10131a";
      ctx.fillText(b.label, x + 5, y + bh / 2 + 3);
    }
  }
}
