export { MonotonicClock } from "./clock.js";
export { StdoutSink, TcpSink, makeSink, publish } from "./publisher.js";
export type { PublishStats, PublisherOptions, Sink } from "./publisher.js";
export {
  COORD_MAX,
  COORD_MIN,
  LANDMARK_COUNT,
  clampCoord,
  makeRecord,
  serializeRecord,
  violations,
} from "./schema.js";
export type { FrameRecord, Handedness } from "./schema.js";
export { CameraUnavailable, SyntheticTracker, createCameraTracker, openPalm } from "./trackers.js";
export type { Tracker, TrackerFrame } from "./trackers.js";
