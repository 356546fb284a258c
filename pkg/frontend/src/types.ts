// Wire types mirrored from the session service.

export type Vec3 = [number, number, number];

export interface ObjectSnapshot {
  id: string;
  color: string;
  center: Vec3;
  half_extents: Vec3;
  attribute: string;
  graspable: boolean;
  fixed: boolean;
}

export interface ZoneSnapshot {
  id: string;
  label: string;
  min: Vec3;
  max: Vec3;
  attribute: string;
}

export interface WorldSnapshot {
  ee: { pos: Vec3; half_extents: Vec3; gripper: string };
  grasped: string | null;
  tick: number;
  force_z: number;
  objects: ObjectSnapshot[];
  zones: ZoneSnapshot[];
}

export interface SessionState {
  session_id: string;
  world: WorldSnapshot;
  last_seq: number;
  commands: string[];
}

export interface StepRecord {
  tick: number;
  ee_pos: Vec3;
  grasped: string | null;
  events: { kind: string; target: string | null }[];
}

export interface VerdictPayload {
  severity: "ok" | "warn" | "reject";
  summary: string;
  reason: string;
  source: string;
  tick: number | null;
  text: string;
  short: string;
}

export interface CommandResult {
  status: "completed" | "rejected";
  collisions?: number;
  verdict?: VerdictPayload;
  last_seq: number;
}

export interface FeedEvent {
  seq: number;
  kind: "command_accepted" | "steps" | "verdict" | "done";
  data: Record<string, unknown>;
}
