/**
 * Explorer state and its URL-fragment serialization.
 *
 * The whole view is a pure function of this state plus service responses,
 * so encoding it in location.hash makes any view reproducible on reload.
 */

export type GridPreset = "coarse" | "medium" | "fine";
export type RenderGoal = "surface" | "wireframe" | "points";

export interface TrackState {
  playing: boolean;
  period: number; // seconds per cycle
}

export interface ExplorerState {
  thetaDeg: number; // dipole axis direction
  phiDeg: number;
  lengthWl: number; // dipole length in wavelengths
  grid: GridPreset; // pattern evaluation step
  opacity: number;
  goal: RenderGoal;
  viewpoint: number; // 1..6
  tracks: [TrackState, TrackState, TrackState]; // phase, length sweep, spin
}

export const GRID_PRESETS: Record<GridPreset, [number, number]> = {
  coarse: [46, 90],
  medium: [91, 180],
  fine: [181, 360],
};

export const LENGTH_MIN = 0.05;
export const LENGTH_MAX = 3.0;

export function defaultState(): ExplorerState {
  return {
    thetaDeg: 0,
    phiDeg: 0,
    lengthWl: 0.5,
    grid: "medium",
    opacity: 0.7,
    goal: "surface",
    viewpoint: 1,
    tracks: [
      { playing: false, period: 4 },
      { playing: false, period: 6 },
      { playing: false, period: 10 },
    ],
  };
}

const clamp = (v: number, lo: number, hi: number) => Math.min(hi, Math.max(lo, v));

export function clampState(s: ExplorerState): ExplorerState {
  return {
    ...s,
    thetaDeg: clamp(s.thetaDeg, 0, 180),
    phiDeg: ((s.phiDeg % 360) + 360) % 360,
    lengthWl: clamp(s.lengthWl, LENGTH_MIN, LENGTH_MAX),
    opacity: clamp(s.opacity, 0, 1),
    viewpoint: clamp(Math.round(s.viewpoint), 1, 6),
    tracks: s.tracks.map((t) => ({
      playing: !!t.playing,
      period: clamp(t.period, 0.5, 120),
    })) as ExplorerState["tracks"],
  };
}

export function encodeFragment(s: ExplorerState): string {
  const parts = [
    `theta=${s.thetaDeg}`,
    `phi=${s.phiDeg}`,
    `len=${s.lengthWl}`,
    `grid=${s.grid}`,
    `op=${s.opacity}`,
    `goal=${s.goal}`,
    `vp=${s.viewpoint}`,
  ];
  s.tracks.forEach((t, i) => {
    parts.push(`t${i + 1}=${t.playing ? 1 : 0}:${t.period}`);
  });
  return parts.join("&");
}

export function decodeFragment(fragment: string): ExplorerState {
  const s = defaultState();
  const text = fragment.startsWith("#") ? fragment.slice(1) : fragment;
  if (!text) return s;
  for (const pair of text.split("&")) {
    const eq = pair.indexOf("=");
    if (eq < 0) continue;
    const key = pair.slice(0, eq);
    const value = decodeURIComponent(pair.slice(eq + 1));
    const num = Number(value);
    switch (key) {
      case "theta":
        if (Number.isFinite(num)) s.thetaDeg = num;
        break;
      case "phi":
        if (Number.isFinite(num)) s.phiDeg = num;
        break;
      case "len":
        if (Number.isFinite(num)) s.lengthWl = num;
        break;
      case "grid":
        if (value in GRID_PRESETS) s.grid = value as GridPreset;
        break;
      case "op":
        if (Number.isFinite(num)) s.opacity = num;
        break;
      case "goal":
        if (value === "surface" || value === "wireframe" || value === "points") s.goal = value;
        break;
      case "vp":
        if (Number.isFinite(num)) s.viewpoint = num;
        break;
      case "t1":
      case "t2":
      case "t3": {
        const idx = Number(key[1]) - 1;
        const [flag, period] = value.split(":");
        s.tracks[idx] = {
          playing: flag === "1",
          period: Number.isFinite(Number(period)) && period !== undefined
            ? Number(period)
            : s.tracks[idx].period,
        };
        break;
      }
    }
  }
  return clampState(s);
}
