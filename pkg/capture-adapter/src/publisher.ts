/**
 * Publishing pipeline: pull tracker frames at a target rate, stamp them with
 * a strictly increasing clock, serialize, and push to a sink.
 *
 * The TCP sink connects out to the engine's listener. While the consumer is
 * away it queues into a bounded buffer with a drop-oldest policy and
 * reconnects with exponential backoff; frames are disposable, so losing old
 * ones beats blocking the capture loop.
 */

import net from "node:net";

import { MonotonicClock } from "./clock.js";
import { FrameRecord, Handedness, makeRecord, serializeRecord } from "./schema.js";
import { Tracker } from "./trackers.js";

export interface Sink {
  write(line: string): void;
  close(): Promise<void>;
}

export class StdoutSink implements Sink {
  constructor(private readonly out: NodeJS.WritableStream = process.stdout) {}

  write(line: string): void {
    this.out.write(line + "\n");
  }

  async close(): Promise<void> {}
}

export interface TcpSinkOptions {
  maxQueue?: number;
  backoffInitialMs?: number;
  backoffMaxMs?: number;
}

export class TcpSink implements Sink {
  readonly stats = { sent: 0, droppedWhileAway: 0, reconnects: 0 };
  private socket: net.Socket | null = null;
  private connected = false;
  private closing = false;
  private attempt = 0;
  private queue: string[] = [];
  private timer: NodeJS.Timeout | null = null;
  private readonly maxQueue: number;
  private readonly backoffInitialMs: number;
  private readonly backoffMaxMs: number;

  constructor(
    private readonly host: string,
    private readonly port: number,
    options: TcpSinkOptions = {},
  ) {
    this.maxQueue = options.maxQueue ?? 256;
    this.backoffInitialMs = options.backoffInitialMs ?? 200;
    this.backoffMaxMs = options.backoffMaxMs ?? 5000;
    this.connect();
  }

  get isConnected(): boolean {
    return this.connected;
  }

  private connect(): void {
    if (this.closing) return;
    const socket = net.createConnection({ host: this.host, port: this.port });
    this.socket = socket;
    socket.on("connect", () => {
      this.connected = true;
      this.attempt = 0;
      const backlog = this.queue;
      this.queue = [];
      for (const line of backlog) this.push(line);
    });
    socket.on("error", () => {
      /* close handler does the scheduling */
    });
    socket.on("close", () => {
      this.connected = false;
      this.socket = null;
      this.scheduleReconnect();
    });
  }

  private scheduleReconnect(): void {
    if (this.closing || this.timer) return;
    const delay = Math.min(this.backoffInitialMs * 2 ** this.attempt, this.backoffMaxMs);
    this.attempt += 1;
    this.timer = setTimeout(() => {
      this.timer = null;
      this.stats.reconnects += 1;
      this.connect();
    }, delay);
  }

  private push(line: string): void {
    if (this.connected && this.socket?.writable) {
      this.socket.write(line + "\n");
      this.stats.sent += 1;
    } else {
      if (this.queue.length >= this.maxQueue) {
        this.queue.shift();
        this.stats.droppedWhileAway += 1;
      }
      this.queue.push(line);
    }
  }

  write(line: string): void {
    this.push(line);
  }

  async close(): Promise<void> {
    this.closing = true;
    if (this.timer) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    const socket = this.socket;
    if (socket) {
      await new Promise<void>((resolve) => socket.end(resolve));
    }
  }
}

export function makeSink(spec: string): Sink {
  if (spec === "stdout") return new StdoutSink();
  if (spec.startsWith("tcp:")) {
    const parts = spec.split(":");
    if (parts.length !== 3 || !Number.isInteger(Number(parts[2]))) {
      throw new Error(`bad output spec ${spec}, expected tcp:HOST:PORT`);
    }
    return new TcpSink(parts[1], Number(parts[2]));
  }
  throw new Error(`bad output spec ${spec}, expected stdout or tcp:HOST:PORT`);
}

export interface PublisherOptions {
  fps: number;
  maxFrames?: number;
  clock?: MonotonicClock;
  onRecord?: (record: FrameRecord) => void;
}

export interface PublishStats {
  emitted: number;
  emptyReads: number;
}

/**
 * Pump the tracker into the sink at up to `fps` records per second.
 * Frames with no detected hand emit nothing. Resolves when stopped or
 * after `maxFrames` records.
 */
export function publish(tracker: Tracker, sink: Sink, options: PublisherOptions) {
  if (!(options.fps >= 1)) {
    throw new Error(`fps must be >= 1, got ${options.fps}`);
  }
  const clock = options.clock ?? new MonotonicClock();
  const stats: PublishStats = { emitted: 0, emptyReads: 0 };
  let stopRequested = false;
  let reading = false;

  let finish: (stats: PublishStats) => void;
  const done = new Promise<PublishStats>((resolve) => {
    finish = resolve;
  });

  const interval = setInterval(async () => {
    if (reading || stopRequested) return;
    reading = true;
    try {
      const frame = await tracker.read();
      if (stopRequested) return;
      if (frame === null) {
        stats.emptyReads += 1;
        return;
      }
      const record = makeRecord(clock.next(), frame.hand as Handedness, frame.landmarks);
      sink.write(serializeRecord(record));
      options.onRecord?.(record);
      stats.emitted += 1;
      if (options.maxFrames !== undefined && stats.emitted >= options.maxFrames) {
        stop();
      }
    } finally {
      reading = false;
    }
  }, 1000 / options.fps);

  function stop(): void {
    if (stopRequested) return;
    stopRequested = true;
    clearInterval(interval);
    tracker.stop();
    finish(stats);
  }

  return { done, stop };
}
