// JSON shapes from the riptide HTTP/WebSocket API, plus thin fetch wrappers.

export interface SpanJson {
  begin: string; // rational, "n/d"
  end: string;
}

export interface EventJson {
  whole: SpanJson | null;
  active: SpanJson;
  value: Record<string, unknown>;
}

export interface DiagnosticJson {
  message: string;
  line: number;
  column: number;
  offset: number;
}

export interface EvalResponse {
  ok: boolean;
  events: EventJson[];
  error: DiagnosticJson | null;
  swapped: boolean;
}

export interface TimedEventJson {
  atTime: number; // wall-clock seconds
  duration: number;
  controls: Record<string, unknown>;
  cycle: string;
}

export interface TransportState {
  cps: number;
  playing: boolean;
  code: string;
}

async function postJson<T>(url: string, body: unknown): Promise<T> {
  const resp = await fetch(url, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  });
  return (await resp.json()) as T;
}

export function evalCode(code: string): Promise<EvalResponse> {
  return postJson<EvalResponse>("/eval", { code });
}

export async function fetchState(): Promise<TransportState> {
  const resp = await fetch("/state");
  return (await resp.json()) as TransportState;
}

export function setCps(cps: number): Promise<unknown> {
  return postJson("/cps", { cps });
}

export function stop(): Promise<unknown> {
  return postJson("/stop", {});
}

/** "3/2" -> 1.5; plain integers pass through. */
export function fracToNumber(text: string): number {
  const slash = text.indexOf("/");
  if (slash < 0) return Number(text);
  return Number(text.slice(0, slash)) / Number(text.slice(slash + 1));
}
