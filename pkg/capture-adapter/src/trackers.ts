/**
 * Landmark sources. The camera tracker wraps an off-the-shelf hand-landmark
 * model; the synthetic tracker generates a deterministic hand for tests,
 * demos, and camera-less machines. Neither performs any gesture logic; the
 * engine downstream is the single source of truth.
 */

import type { Handedness } from "./schema.js";

export interface TrackerFrame {
  hand: Handedness;
  confidence: number;
  landmarks: { x: number; y: number; z: number }[];
}

export interface Tracker {
  /** One detection attempt; null when no hand is visible. */
  read(): Promise<TrackerFrame | null>;
  stop(): void;
}

export class CameraUnavailable extends Error {}

/**
 * Deterministic synthetic hand: an open palm whose base orbits a small
 * circle. `gapEvery` > 0 reports no hand every N-th read, exercising the
 * "no detection, no output" path.
 */
export class SyntheticTracker implements Tracker {
  private tick = 0;

  constructor(private readonly gapEvery = 0) {}

  async read(): Promise<TrackerFrame | null> {
    const i = this.tick++;
    if (this.gapEvery > 0 && i % this.gapEvery === this.gapEvery - 1) {
      return null;
    }
    const angle = (i % 120) * (Math.PI / 60);
    const bx = 0.5 + 0.18 * Math.cos(angle);
    const by = 0.45 + 0.12 * Math.sin(angle);
    return { hand: "Right", confidence: 0.99, landmarks: openPalm(bx, by) };
  }

  stop(): void {}
}

/** 21-point open palm anchored at a base position, engine-valid by construction. */
export function openPalm(bx: number, by: number): { x: number; y: number; z: number }[] {
  const lm = new Array<{ x: number; y: number; z: number }>(21);
  const p = (x: number, y: number, z = 0) => ({ x, y, z });
  lm[0] = p(bx, by + 0.22);
  lm[1] = p(bx - 0.07, by + 0.12);
  lm[2] = p(bx - 0.1, by + 0.08);
  lm[3] = p(bx - 0.12, by + 0.05);
  lm[4] = p(bx - 0.17, by + 0.02);
  const columns = [-0.05, -0.017, 0.017, 0.05];
  columns.forEach((dx, f) => {
    const mcp = 5 + 4 * f;
    lm[mcp] = p(bx + dx, by + 0.05);
    lm[mcp + 1] = p(bx + dx, by);
    lm[mcp + 2] = p(bx + dx, by - 0.06);
    lm[mcp + 3] = p(bx + dx, by - 0.13);
  });
  return lm;
}

export interface CameraOptions {
  cameraIndex: number;
  width?: number;
  height?: number;
}

/**
 * Webcam tracker backed by @mediapipe/tasks-vision. Needs a browser-like
 * environment (getUserMedia + video element); anywhere else this throws
 * CameraUnavailable instead of pretending a camera exists.
 */
export async function createCameraTracker(options: CameraOptions): Promise<Tracker> {
  const nav = (globalThis as { navigator?: Navigator }).navigator;
  const doc = (globalThis as { document?: Document }).document;
  if (!nav?.mediaDevices?.getUserMedia || !doc) {
    throw new CameraUnavailable("no camera access in this environment (getUserMedia missing)");
  }

  let vision;
  try {
    vision = await import("@mediapipe/tasks-vision");
  } catch (err) {
    throw new CameraUnavailable(`hand-tracking model unavailable: ${(err as Error).message}`);
  }
  const { FilesetResolver, HandLandmarker } = vision;

  const devices = (await nav.mediaDevices.enumerateDevices()).filter((d) => d.kind === "videoinput");
  const device = devices[options.cameraIndex];
  if (!device) {
    throw new CameraUnavailable(`no camera at index ${options.cameraIndex}`);
  }

  let stream: MediaStream;
  try {
    stream = await nav.mediaDevices.getUserMedia({
      video: {
        deviceId: { exact: device.deviceId },
        width: options.width ?? 640,
        height: options.height ?? 480,
      },
    });
  } catch (err) {
    throw new CameraUnavailable(`cannot open camera: ${(err as Error).message}`);
  }

  const video = doc.createElement("video");
  video.srcObject = stream;
  await video.play();

  const fileset = await FilesetResolver.forVisionTasks(
    "https://cdn.jsdelivr.net/npm/@mediapipe/tasks-vision@latest/wasm",
  );
  const landmarker = await HandLandmarker.createFromOptions(fileset, {
    baseOptions: {
      modelAssetPath:
        "https://storage.googleapis.com/mediapipe-models/hand_landmarker/hand_landmarker/float16/1/hand_landmarker.task",
    },
    runningMode: "VIDEO",
    numHands: 1,
  });

  return {
    async read(): Promise<TrackerFrame | null> {
      const result = landmarker.detectForVideo(video, performance.now());
      if (!result.landmarks.length) return null;
      // numHands is 1, but pick the highest-confidence hand defensively.
      let best = 0;
      let bestScore = -1;
      result.handednesses.forEach((categories, i) => {
        const score = categories[0]?.score ?? 0;
        if (score > bestScore) {
          bestScore = score;
          best = i;
        }
      });
      const label = result.handednesses[best]?.[0]?.categoryName === "Left" ? "Left" : "Right";
      return {
        hand: label,
        confidence: bestScore,
        landmarks: result.landmarks[best].map((l) => ({ x: l.x, y: l.y, z: l.z })),
      };
    },
    stop(): void {
      landmarker.close();
      stream.getTracks().forEach((track) => track.stop());
    },
  };
}
