// Dual-pane vector rendering of world snapshots.
//
// Everything drawn comes from server snapshots plus server step records;
// there is no client-side physics. The context interface is the tiny
// subset of CanvasRenderingContext2D the renderer needs, so tests can
// pass a recording stub.

import type { ObjectSnapshot, Vec3, WorldSnapshot } from "./types.js";

export interface Draw2D {
  fillStyle: string;
  strokeStyle: string;
  lineWidth: number;
  fillRect(x: number, y: number, w: number, h: number): void;
  strokeRect(x: number, y: number, w: number, h: number): void;
  clearRect(x: number, y: number, w: number, h: number): void;
}

export interface PaneConfig {
  view: "top" | "front" | "side";
  width: number;
  height: number;
  scale: number; // pixels per millimeter
}

export const PALETTE: Record<string, string> = {
  red: "#ff0000",
  blue: "#0000ff",
  black: "#000000",
  green: "#00a000",
  yellow: "#e6c800",
  gray: "#808080",
};

export const EE_COLOR = "#ff8c00";
export const ZONE_COLOR = "#808080";
export const BACKGROUND = "#ffffff";

export function project(view: PaneConfig["view"], p: Vec3): [number, number] {
  if (view === "top") return [p[0], p[1]];
  if (view === "front") return [p[0], p[2]];
  return [p[1], p[2]];
}

/** World (u, v) in mm to pixel coordinates, origin at the pane center, v up. */
export function toPixel(cfg: PaneConfig, u: number, v: number): [number, number] {
  return [cfg.width / 2 + u * cfg.scale, cfg.height / 2 - v * cfg.scale];
}

function drawBox(
  ctx: Draw2D,
  cfg: PaneConfig,
  center: Vec3,
  half: Vec3,
  color: string,
  outline = false,
): void {
  const [u, v] = project(cfg.view, center);
  const [hu, hv] =
    cfg.view === "top" ? [half[0], half[1]] : cfg.view === "front" ? [half[0], half[2]] : [half[1], half[2]];
  const [px, py] = toPixel(cfg, u - hu, v + hv);
  const w = 2 * hu * cfg.scale;
  const h = 2 * hv * cfg.scale;
  if (outline) {
    ctx.strokeStyle = color;
    ctx.lineWidth = 1;
    ctx.strokeRect(px, py, w, h);
  } else {
    ctx.fillStyle = color;
    ctx.fillRect(px, py, w, h);
  }
}

export function objectColor(obj: ObjectSnapshot): string {
  if (obj.fixed) return PALETTE.black;
  return PALETTE[obj.color] ?? "#aa00aa";
}

export interface SceneOverride {
  eePos?: Vec3;
  graspedId?: string | null;
}

/**
 * Draw one pane. During playback the EE (and whatever the server says it
 * grasped) rides along the step record positions via the override.
 */
export function drawScene(
  ctx: Draw2D,
  cfg: PaneConfig,
  world: WorldSnapshot,
  override: SceneOverride = {},
): void {
  ctx.clearRect(0, 0, cfg.width, cfg.height);
  ctx.fillStyle = BACKGROUND;
  ctx.fillRect(0, 0, cfg.width, cfg.height);

  for (const zone of world.zones) {
    const center: Vec3 = [
      (zone.min[0] + zone.max[0]) / 2,
      (zone.min[1] + zone.max[1]) / 2,
      (zone.min[2] + zone.max[2]) / 2,
    ];
    const half: Vec3 = [
      (zone.max[0] - zone.min[0]) / 2,
      (zone.max[1] - zone.min[1]) / 2,
      (zone.max[2] - zone.min[2]) / 2,
    ];
    drawBox(ctx, cfg, center, half, ZONE_COLOR, true);
  }

  const eePos = override.eePos ?? world.ee.pos;
  const graspedId = override.graspedId !== undefined ? override.graspedId : world.grasped;
  const fixed = world.objects.filter((o) => o.fixed);
  const movable = world.objects.filter((o) => !o.fixed);
  for (const obj of [...fixed, ...movable]) {
    const center = obj.id === graspedId ? eePos : obj.center;
    drawBox(ctx, cfg, center, obj.half_extents, objectColor(obj));
  }
  drawBox(ctx, cfg, eePos, world.ee.half_extents, EE_COLOR);
}
