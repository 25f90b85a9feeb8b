/**
 * Typed client for the virtlab compute service.
 *
 * Each endpoint keeps at most one request in flight: issuing a new one
 * aborts its predecessor, so the view always settles on the last state
 * (last-write-wins). All physics numbers come from the service untouched.
 */

import { ExplorerState, GRID_PRESETS } from "./state.js";

export interface MeshResponse {
  vertices: number[][];
  faces: number[][];
  values?: number[];
}

export interface CutResponse {
  plane: "xoy" | "yoz" | "zox";
  angles_deg: number[];
  values: number[];
  color: string;
}

export interface PolarizationResponse {
  axial_ratio: number | null;
  handedness: "CW" | "CCW" | "LINEAR";
  classification: "linear" | "circular" | "elliptical";
  convention: string;
  major: number[];
  minor: number[];
}

export interface CharacteristicsResponse {
  length_wl: number;
  directivity: number;
  r_in_ohm: number;
  theta_max_deg: number;
}

export interface ApiErrorBody {
  status: number;
  code: string;
  message: string;
}

export class ServiceError extends Error {
  constructor(public body: ApiErrorBody) {
    super(body.message);
  }
}

export interface ElementBody {
  axis: number[];
  kind: "sinusoidal";
  length_wl: number;
}

/** Dipole axis unit vector from its (theta, phi) direction in degrees. */
export function axisFromAngles(thetaDeg: number, phiDeg: number): number[] {
  const t = (thetaDeg * Math.PI) / 180;
  const p = (phiDeg * Math.PI) / 180;
  return [Math.sin(t) * Math.cos(p), Math.sin(t) * Math.sin(p), Math.cos(t)];
}

export function elementFor(state: ExplorerState): ElementBody {
  return {
    axis: axisFromAngles(state.thetaDeg, state.phiDeg),
    kind: "sinusoidal",
    length_wl: state.lengthWl,
  };
}

/**
 * Observation direction for the polarization readout: the azimuthal unit
 * vector at (theta, phi), which is perpendicular to the dipole axis for
 * every direction choice.
 */
export function observationDirection(state: ExplorerState): { theta_deg: number; phi_deg: number } {
  return { theta_deg: 90, phi_deg: (state.phiDeg + 90) % 360 };
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private controllers = new Map<string, AbortController>();

  constructor(
    public baseUrl: string,
    private fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  /** Abort any in-flight request in the same lane and start a new one. */
  private async post<T>(lane: string, path: string, body: unknown): Promise<T> {
    this.controllers.get(lane)?.abort();
    const controller = new AbortController();
    this.controllers.set(lane, controller);
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
      signal: controller.signal,
    });
    const text = await response.text();
    if (!response.ok) {
      throw new ServiceError(JSON.parse(text) as ApiErrorBody);
    }
    return JSON.parse(text) as T;
  }

  pattern(state: ExplorerState): Promise<MeshResponse> {
    const [nTheta, nPhi] = GRID_PRESETS[state.grid];
    return this.post("pattern", "/api/v1/pattern", {
      elements: [elementFor(state)],
      grid: { n_theta: nTheta, n_phi: nPhi },
      mapping: "field",
    });
  }

  cuts(state: ExplorerState): Promise<{ cuts: CutResponse[] }> {
    return this.post("cuts", "/api/v1/cuts", {
      elements: [elementFor(state)],
      n: 180,
    });
  }

  polarization(state: ExplorerState): Promise<PolarizationResponse> {
    return this.post("polarization", "/api/v1/polarization", {
      elements: [elementFor(state)],
      direction: observationDirection(state),
      convention: "toward_observer",
    });
  }

  characteristics(state: ExplorerState): Promise<CharacteristicsResponse> {
    return this.post("characteristics", "/api/v1/characteristics", {
      length: state.lengthWl,
    });
  }

  /** Download URL for the current state as a .wrl or .svg artifact. */
  exportUrl(state: ExplorerState, format: "wrl" | "svg"): string {
    const [nTheta, nPhi] = GRID_PRESETS[state.grid];
    const query = new URLSearchParams({
      length_wl: String(state.lengthWl),
      theta_deg: String(state.thetaDeg),
      phi_deg: String(state.phiDeg),
      grid: `${nTheta}x${nPhi}`,
    });
    return `${this.baseUrl}/api/v1/scenarios/fig9/export.${format}?${query}`;
  }
}

export function isAbort(err: unknown): boolean {
  return err instanceof DOMException && err.name === "AbortError";
}
