import { describe, expect, it } from "vitest";

import { SubmitQueue } from "../src/queue";
import { nextBackoff, BACKOFF_CAP_MS } from "../src/live";
import { diagnosticLines } from "../src/diagnostic";

function deferred<T>() {
  let resolve!: (v: T) => void;
  let reject!: (e: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}

describe("SubmitQueue", () => {
  it("runs one eval at a time, in submit order", async () => {
    const gates = [deferred<string>(), deferred<string>(), deferred<string>()];
    let started = 0;
    let active = 0;
    let peak = 0;
    const queue = new SubmitQueue<string>((code) => {
      const gate = gates[started++];
      active++;
      peak = Math.max(peak, active);
      return gate.promise.then((v) => {
        active--;
        return `${code}:${v}`;
      });
    });

    const a = queue.submit("a");
    const b = queue.submit("b");
    const c = queue.submit("c");
    await new Promise((r) => setTimeout(r));
    expect(started).toBe(1); // b and c are queued, not started

    gates[0].resolve("1");
    await expect(a).resolves.toBe("a:1");
    gates[1].resolve("2");
    await expect(b).resolves.toBe("b:2");
    gates[2].resolve("3");
    await expect(c).resolves.toBe("c:3");
    expect(peak).toBe(1);
  });

  it("a failed eval does not wedge the queue", async () => {
    let calls = 0;
    const queue = new SubmitQueue<number>((code) => {
      calls++;
      return code === "bad" ? Promise.reject(new Error("boom")) : Promise.resolve(7);
    });
    await expect(queue.submit("bad")).rejects.toThrow("boom");
    await expect(queue.submit("good")).resolves.toBe(7);
    expect(calls).toBe(2);
  });

  it("busy reflects an in-flight eval", async () => {
    const gate = deferred<number>();
    const queue = new SubmitQueue<number>(() => gate.promise);
    expect(queue.busy).toBe(false);
    const p = queue.submit("x");
    await Promise.resolve(); // let the chained start run
    expect(queue.busy).toBe(true);
    gate.resolve(1);
    await p;
    expect(queue.busy).toBe(false);
  });
});

describe("nextBackoff", () => {
  it("doubles from the base and caps", () => {
    const delays: number[] = [];
    let d: number | null = null;
    for (let i = 0; i < 8; i++) {
      d = nextBackoff(d);
      delays.push(d);
    }
    expect(delays).toEqual([250, 500, 1000, 2000, 4000, 8000, 8000, 8000]);
    expect(Math.max(...delays)).toBe(BACKOFF_CAP_MS);
  });
});

describe("diagnosticLines", () => {
  it("points a caret at the reported column", () => {
    const lines = diagnosticLines('s "bd', {
      message: "unterminated string",
      line: 1,
      column: 3,
      offset: 2,
    });
    expect(lines).toEqual(['line 1 col 3: unterminated string', 's "bd', "  ^"]);
  });

  it("picks the right line of multi-line code", () => {
    const lines = diagnosticLines("a\nbd [sn", {
      message: "unclosed '['",
      line: 2,
      column: 4,
      offset: 5,
    });
    expect(lines[1]).toBe("bd [sn");
    expect(lines[2]).toBe("   ^");
  });
});
