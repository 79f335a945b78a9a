/**
 * Frame record wire format shared with the gesture engine.
 *
 * One JSONL record per detected-hand frame:
 *
 *   {"t": <int ms>, "hand": "Left"|"Right", "lm": [[x, y, z], ...21]}
 *
 * `t` is a positive millisecond timestamp, strictly increasing across the
 * records this adapter emits. Coordinates are normalized image coordinates;
 * the engine accepts [-0.5, 1.5], so values are clamped into that band
 * before serialization (detectors can overshoot further on occasion).
 */

export const LANDMARK_COUNT = 21;
export const COORD_MIN = -0.5;
export const COORD_MAX = 1.5;

export type Handedness = "Left" | "Right";

export interface FrameRecord {
  t: number;
  hand: Handedness;
  lm: [number, number, number][];
}

export function clampCoord(value: number): number {
  if (!Number.isFinite(value)) return 0;
  return Math.min(COORD_MAX, Math.max(COORD_MIN, value));
}

/** Build a schema-exact record from raw landmark output. */
export function makeRecord(
  t: number,
  hand: Handedness,
  landmarks: { x: number; y: number; z: number }[],
): FrameRecord {
  if (!Number.isInteger(t) || t <= 0) {
    throw new Error(`timestamp must be a positive integer, got ${t}`);
  }
  if (landmarks.length !== LANDMARK_COUNT) {
    throw new Error(`expected ${LANDMARK_COUNT} landmarks, got ${landmarks.length}`);
  }
  const lm = landmarks.map(
    (p): [number, number, number] => [
      clampCoord(p.x),
      clampCoord(p.y),
      Number.isFinite(p.z) ? p.z : 0,
    ],
  );
  return { t, hand, lm };
}

export function serializeRecord(record: FrameRecord): string {
  return JSON.stringify(record);
}

/**
 * Local mirror of the engine's validation rules, for self-checks.
 * The authoritative check is the engine's own parser.
 */
export function violations(record: FrameRecord): string[] {
  const problems: string[] = [];
  if (!Number.isInteger(record.t) || record.t <= 0) problems.push("t must be a positive integer");
  if (record.hand !== "Left" && record.hand !== "Right") problems.push("bad handedness");
  if (record.lm.length !== LANDMARK_COUNT) problems.push("wrong landmark count");
  record.lm.forEach(([x, y, z], i) => {
    if (!(x >= COORD_MIN && x <= COORD_MAX)) problems.push(`lm[${i}].x out of band`);
    if (!(y >= COORD_MIN && y <= COORD_MAX)) problems.push(`lm[${i}].y out of band`);
    if (!Number.isFinite(z)) problems.push(`lm[${i}].z not finite`);
  });
  return problems;
}
