import { evalCode, fetchState, setCps, stop } from "./api";
import type { EvalResponse } from "./api";
import { diagnosticLines } from "./diagnostic";
import { drawLive, LiveFeed } from "./live";
import { SubmitQueue } from "./queue";
import {
  applyEval,
  applyTransport,
  initialState,
  pushEvents,
  setConnected,
} from "./state";
import type { ReplState } from "./state";
import { drawTimeline, layout } from "./timeline";

const $ = <T extends HTMLElement>(id: string) => document.getElementById(id) as T;

const codeBox = $<HTMLTextAreaElement>("code");
const runBtn = $<HTMLButtonElement>("run");
const stopBtn = $<HTMLButtonElement>("stop");
const cpsBox = $<HTMLInputElement>("cps");
const errorBox = $<HTMLPreElement>("error");
const banner = $<HTMLDivElement>("banner");
const statusLine = $<HTMLDivElement>("status");
const previewCanvas = $<HTMLCanvasElement>("preview");
const liveCanvas = $<HTMLCanvasElement>("live");

let state: ReplState = initialState();
// wall-clock offset between server event times and this machine
let clockSkew: number | null = null;

function setState(next: ReplState): void {
  state = next;
  render();
}

function render(): void {
  banner.style.display = state.connected ? "none" : "block";
  statusLine.textContent = state.playing
    ? `playing at ${state.cps} cps`
    : "stopped";
  drawTimeline(previewCanvas, layout(state.timeline, 0, 2), 2);

  const resp = state.lastResponse;
  if (resp && !resp.ok && resp.error) {
    errorBox.textContent = diagnosticLines(codeBox.value, resp.error).join("\n");
    errorBox.style.display = "block";
  } else {
    errorBox.style.display = "none";
  }
}

const queue = new SubmitQueue<EvalResponse>(evalCode);

function submit(): void {
  const code = codeBox.value;
  runBtn.disabled = true;
  queue
    .submit(code)
    .then((resp) => setState(applyEval(state, code, resp)))
    .catch(() => setState(setConnected(state, false)))
    .finally(() => {
      if (!queue.busy) runBtn.disabled = false;
    });
}

runBtn.onclick = submit;
codeBox.addEventListener("keydown", (ev) => {
  if (ev.key === "Enter" && (ev.ctrlKey || ev.metaKey)) {
    ev.preventDefault();
    submit();
  }
});

stopBtn.onclick = () => {
  stop().then(() => setState(applyTransport(state, state.cps, false)));
};

cpsBox.addEventListener("change", () => {
  const cps = Number(cpsBox.value);
  if (!(cps > 0)) {
    cpsBox.value = String(state.cps);
    return;
  }
  setCps(cps).then(() => setState(applyTransport(state, cps, state.playing)));
});

const feed = new LiveFeed(
  `${location.protocol === "https:" ? "wss" : "ws"}://${location.host}/events`,
  {
    onEvent: (e) => {
      if (clockSkew === null) clockSkew = e.atTime - Date.now() / 1000;
      setState(pushEvents(state, [e]));
    },
    onStatus: (connected) => {
      setState(setConnected(state, connected));
      if (connected) {
        // pick up cps/code set by other clients while we were away
        fetchState().then((t) => {
          if (codeBox.value.trim() === "" && t.code) codeBox.value = t.code;
          cpsBox.value = String(t.cps);
          setState(applyTransport(state, t.cps, t.playing));
        });
      }
    },
  },
);
feed.start();

function tick(): void {
  const now = Date.now() / 1000 + (clockSkew ?? 0);
  drawLive(liveCanvas, state.recentEvents, now);
  requestAnimationFrame(tick);
}
requestAnimationFrame(tick);

fetchState().then((t) => {
  cpsBox.value = String(t.cps);
  if (t.code) codeBox.value = t.code;
  setState(applyTransport(state, t.cps, t.playing));
});
