#!/usr/bin/env node
/**
 * capture-adapter: publish hand-landmark frame records to stdout or TCP.
 *
 * Flags: --camera N, --fps N, --out stdout|tcp:HOST:PORT. With
 * --source synthetic it emits a deterministic orbiting hand instead of
 * opening a camera (demos, tests, machines without one).
 */

import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { makeSink, publish } from "./publisher.js";
import { CameraUnavailable, SyntheticTracker, Tracker, createCameraTracker } from "./trackers.js";

export async function main(argv: string[]): Promise<number> {
  const args = await yargs(argv)
    .option("camera", { type: "number", default: 0, describe: "camera index" })
    .option("fps", { type: "number", default: 30, describe: "target frames per second" })
    .option("out", { type: "string", default: "stdout", describe: "stdout or tcp:HOST:PORT" })
    .option("source", {
      choices: ["camera", "synthetic"] as const,
      default: "camera" as const,
      describe: "landmark source",
    })
    .option("frames", { type: "number", describe: "stop after this many records" })
    .strict()
    .parse();

  if (!(args.fps >= 1)) {
    console.error("error: --fps must be >= 1");
    return 2;
  }

  let tracker: Tracker;
  try {
    tracker =
      args.source === "synthetic"
        ? new SyntheticTracker()
        : await createCameraTracker({ cameraIndex: args.camera });
  } catch (err) {
    if (err instanceof CameraUnavailable) {
      console.error(`error: ${err.message}`);
      return 3;
    }
    throw err;
  }

  let sink;
  try {
    sink = makeSink(args.out);
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 2;
  }

  const run = publish(tracker, sink, { fps: args.fps, maxFrames: args.frames });
  process.on("SIGINT", () => run.stop());
  process.on("SIGTERM", () => run.stop());
  const stats = await run.done;
  await sink.close();
  console.error(`emitted=${stats.emitted} empty_reads=${stats.emptyReads}`);
  return 0;
}

const entry = process.argv[1] ?? "";
if (entry.endsWith("cli.js") || entry.endsWith("capture-adapter")) {
  main(hideBin(process.argv)).then((code) => {
    process.exitCode = code;
  });
}
