// One eval in flight at a time; anything submitted meanwhile queues up
// in order behind it. The UI never awaits inline, so typing stays live.

export class SubmitQueue<T> {
  private chain: Promise<unknown> = Promise.resolve();
  private inFlight = 0;

  constructor(private run: (code: string) => Promise<T>) {}

  get busy(): boolean {
    return this.inFlight > 0;
  }

  submit(code: string): Promise<T> {
    const next = this.chain.then(() => {
      this.inFlight += 1;
      return this.run(code);
    });
    const settle = () => {
      this.inFlight -= 1;
    };
    this.chain = next.then(settle, settle);
    return next;
  }
}
