/**
 * Display-space conversion of service responses.
 *
 * Only layout transforms happen here (typed arrays, plane embedding,
 * the field-mapping square root matching the 3D surface radius); all
 * pattern values arrive precomputed from the service.
 */

import { CutResponse, MeshResponse } from "./api.js";

export interface BufferArrays {
  positions: Float32Array;
  indices: Uint32Array;
  values: Float32Array;
}

export function toBufferArrays(mesh: MeshResponse): BufferArrays {
  const n = mesh.vertices.length;
  const positions = new Float32Array(n * 3);
  for (let i = 0; i < n; i++) {
    positions[3 * i] = mesh.vertices[i][0];
    positions[3 * i + 1] = mesh.vertices[i][1];
    positions[3 * i + 2] = mesh.vertices[i][2];
  }
  const indices = new Uint32Array(mesh.faces.length * 3);
  for (let i = 0; i < mesh.faces.length; i++) {
    indices[3 * i] = mesh.faces[i][0];
    indices[3 * i + 1] = mesh.faces[i][1];
    indices[3 * i + 2] = mesh.faces[i][2];
  }
  const values = new Float32Array(n);
  if (mesh.values) {
    for (let i = 0; i < n; i++) values[i] = mesh.values[i];
  }
  return { positions, indices, values };
}

/**
 * 3D points of one main-plane cut, radius sqrt(value) to match the
 * field-mapped pattern surface. The angle runs from the plane's first
 * axis toward its second, mirroring the service convention.
 */
export function cutPoints(cut: CutResponse): Float32Array {
  const n = cut.angles_deg.length;
  const out = new Float32Array(n * 3);
  for (let i = 0; i < n; i++) {
    const a = (cut.angles_deg[i] * Math.PI) / 180;
    const r = Math.sqrt(cut.values[i]);
    const u = r * Math.cos(a);
    const v = r * Math.sin(a);
    let x = 0;
    let y = 0;
    let z = 0;
    if (cut.plane === "xoy") {
      x = u;
      y = v;
    } else if (cut.plane === "yoz") {
      y = u;
      z = v;
    } else {
      z = u;
      x = v;
    }
    out[3 * i] = x;
    out[3 * i + 1] = y;
    out[3 * i + 2] = z;
  }
  return out;
}

/** Field arrow tip along the polarization ellipse at the given phase. */
export function ellipsePoint(major: number[], minor: number[], phase: number): number[] {
  const tau = 2 * Math.PI * phase;
  return [
    major[0] * Math.cos(tau) + minor[0] * Math.sin(tau),
    major[1] * Math.cos(tau) + minor[1] * Math.sin(tau),
    major[2] * Math.cos(tau) + minor[2] * Math.sin(tau),
  ];
}
