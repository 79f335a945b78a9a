/**
 * Monotonic millisecond clock with strictly increasing integer output.
 *
 * Two frames inside the same millisecond would otherwise serialize with
 * equal timestamps; the engine accepts ties, but this adapter promises
 * strict increase, so repeats bump forward by one.
 */

export class MonotonicClock {
  private last = 0;
  private readonly origin: number;
  private readonly now: () => number;

  constructor(now?: () => number) {
    this.now = now ?? (() => performance.now());
    this.origin = this.now();
  }

  /** Next timestamp: integer milliseconds since construction, >= last + 1. */
  next(): number {
    const raw = Math.round(this.now() - this.origin) + 1;
    this.last = raw > this.last ? raw : this.last + 1;
    return this.last;
  }
}
