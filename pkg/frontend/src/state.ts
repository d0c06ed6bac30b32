// REPL state and the pure transitions the UI applies to it.
// Kept free of DOM so it can be unit tested.

import type { EvalResponse, EventJson, TimedEventJson } from "./api";

export const EVENT_CAPACITY = 256;

export interface ReplState {
  code: string;
  lastResponse: EvalResponse | null;
  connected: boolean;
  recentEvents: TimedEventJson[]; // ring buffer, ordered by atTime
  cps: number;
  playing: boolean;
  // last successful preview; a failed submit must not clear it
  timeline: EventJson[];
}

export function initialState(): ReplState {
  return {
    code: "",
    lastResponse: null,
    connected: false,
    recentEvents: [],
    cps: 0.5,
    playing: true,
    timeline: [],
  };
}

export function applyEval(state: ReplState, code: string, resp: EvalResponse): ReplState {
  return {
    ...state,
    lastResponse: resp,
    code: resp.ok ? code : state.code,
    timeline: resp.ok ? resp.events : state.timeline,
    playing: resp.ok ? true : state.playing,
  };
}

export function pushEvents(state: ReplState, incoming: TimedEventJson[]): ReplState {
  if (incoming.length === 0) return state;
  const merged = state.recentEvents.concat(incoming);
  merged.sort((a, b) => a.atTime - b.atTime);
  return {
    ...state,
    recentEvents: merged.length > EVENT_CAPACITY ? merged.slice(merged.length - EVENT_CAPACITY) : merged,
  };
}

export function setConnected(state: ReplState, connected: boolean): ReplState {
  return state.connected === connected ? state : { ...state, connected };
}

export function applyTransport(state: ReplState, cps: number, playing: boolean): ReplState {
  return { ...state, cps, playing };
}
