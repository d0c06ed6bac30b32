// Live event feed: /events WebSocket with reconnect backoff, and the
// scrolling now-line view of what the scheduler is firing.

import type { TimedEventJson } from "./api";
import { laneKey, LANE_COLORS } from "./timeline";

export const BACKOFF_BASE_MS = 250;
export const BACKOFF_CAP_MS = 8000;

/** Next reconnect delay: doubles from the base, capped. null = first try. */
export function nextBackoff(previous: number | null): number {
  if (previous === null) return BACKOFF_BASE_MS;
  return Math.min(previous * 2, BACKOFF_CAP_MS);
}

export interface FeedHandlers {
  onEvent(e: TimedEventJson): void;
  onStatus(connected: boolean): void;
}

export class LiveFeed {
  private ws: WebSocket | null = null;
  private delay: number | null = null;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private stopped = false;

  constructor(private url: string, private handlers: FeedHandlers) {}

  start(): void {
    this.stopped = false;
    this.connect();
  }

  stop(): void {
    this.stopped = true;
    if (this.timer !== null) clearTimeout(this.timer);
    this.ws?.close();
  }

  private connect(): void {
    const ws = new WebSocket(this.url);
    this.ws = ws;
    ws.onopen = () => {
      this.delay = null;
      this.handlers.onStatus(true);
    };
    ws.onmessage = (msg) => {
      this.handlers.onEvent(JSON.parse(msg.data as string) as TimedEventJson);
    };
    ws.onclose = () => {
      this.handlers.onStatus(false);
      if (this.stopped) return;
      this.delay = nextBackoff(this.delay);
      this.timer = setTimeout(() => this.connect(), this.delay);
    };
    ws.onerror = () => ws.close();
  }
}

const WINDOW_SECONDS = 6; // visible span of wall-clock time
const NOW_FRACTION = 0.75; // now-line sits 3/4 across

export function drawLive(
  canvas: HTMLCanvasElement,
  events: TimedEventJson[],
  now: number,
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const w = canvas.width;
  const h = canvas.height;
  ctx.clearRect(0, 0, w, h);
  ctx.fillStyle = "#14171c";
  ctx.fillRect(0, 0, w, h);

  const pxPerSec = w / WINDOW_SECONDS;
  const nowX = w * NOW_FRACTION;
  const lanes: string[] = [];

  for (const e of events) {
    const x = nowX + (e.atTime - now) * pxPerSec;
    const bw = Math.max(2, e.duration * pxPerSec);
    if (x + bw < 0 || x > w) continue;
    const key = laneKey(e.controls);
    let lane = lanes.indexOf(key);
    if (lane < 0) {
      lane = lanes.length;
      lanes.push(key);
    }
    const laneH = h / Math.max(4, lanes.length);
    const y = (lane % Math.max(4, lanes.length)) * laneH + 2;
    ctx.fillStyle = LANE_COLORS[lane % LANE_COLORS.length];
    ctx.globalAlpha = e.atTime <= now ? 0.4 : 0.9;
    ctx.fillRect(x, y, bw, laneH - 4);
    ctx.globalAlpha = 1;
  }

  ctx.strokeStyle = "#ff5252";
  ctx.beginPath();
  ctx.moveTo(nowX, 0);
  ctx.lineTo(nowX, h);
  ctx.stroke();
}
