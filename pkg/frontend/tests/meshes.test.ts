import { describe, expect, it } from "vitest";

import { cutPoints, ellipsePoint, toBufferArrays } from "../src/meshes.js";

describe("buffer conversion", () => {
  it("flattens vertices, faces and values", () => {
    const arrays = toBufferArrays({
      vertices: [[0, 0, 0], [1, 0, 0], [0, 1, 0]],
      faces: [[0, 1, 2]],
      values: [0, 0.5, 1],
    });
    expect(Array.from(arrays.positions)).toEqual([0, 0, 0, 1, 0, 0, 0, 1, 0]);
    expect(Array.from(arrays.indices)).toEqual([0, 1, 2]);
    expect(Array.from(arrays.values)).toEqual([0, 0.5, 1]);
  });

  it("missing values yields zeros", () => {
    const arrays = toBufferArrays({ vertices: [[1, 2, 3]], faces: [] });
    expect(Array.from(arrays.values)).toEqual([0]);
  });
});

describe("cut embedding", () => {
  const base = { angles_deg: [0, 90, 180, 270], values: [1, 0.25, 1, 0.25], color: "#FF0000" };

  it("xoy cut lies in the z=0 plane with sqrt radius", () => {
    const pts = cutPoints({ ...base, plane: "xoy" });
    expect(pts[0]).toBeCloseTo(1, 6); // angle 0 -> +x, radius sqrt(1)
    expect(pts[2]).toBe(0);
    expect(pts[4]).toBeCloseTo(0.5, 6); // angle 90 -> +y, radius sqrt(0.25)
    for (let i = 0; i < 4; i++) expect(pts[3 * i + 2]).toBe(0);
  });

  it("yoz cut starts on +y and turns toward +z", () => {
    const pts = cutPoints({ ...base, plane: "yoz" });
    expect(pts[1]).toBeCloseTo(1, 6);
    expect(pts[5]).toBeCloseTo(0.5, 6);
    for (let i = 0; i < 4; i++) expect(pts[3 * i]).toBe(0);
  });

  it("zox cut starts on +z and turns toward +x", () => {
    const pts = cutPoints({ ...base, plane: "zox" });
    expect(pts[2]).toBeCloseTo(1, 6);
    expect(pts[3]).toBeCloseTo(0.5, 6);
    for (let i = 0; i < 4; i++) expect(pts[3 * i + 1]).toBe(0);
  });
});

describe("ellipse sweep", () => {
  it("visits major and minor axes at quarter phases", () => {
    const major = [0, 0, 2];
    const minor = [1, 0, 0];
    expect(ellipsePoint(major, minor, 0)).toEqual([0, 0, 2]);
    const quarter = ellipsePoint(major, minor, 0.25);
    expect(quarter[0]).toBeCloseTo(1, 12);
    expect(quarter[2]).toBeCloseTo(0, 12);
    const half = ellipsePoint(major, minor, 0.5);
    expect(half[2]).toBeCloseTo(-2, 12);
  });
});
