/** The six predefined camera positions (world units are wavelengths). */

export interface CameraPreset {
  label: string;
  position: [number, number, number];
  lookAt: [number, number, number];
}

export const VIEWPOINTS: CameraPreset[] = [
  { label: "First octant", position: [2.5, 2.0, 1.5], lookAt: [0, 0, 0] },
  { label: "Front (+x)", position: [3.4, 0, 0], lookAt: [0, 0, 0] },
  { label: "Side (+y)", position: [0, 3.4, 0], lookAt: [0, 0, 0] },
  { label: "Top (+z)", position: [0, 0, 3.4], lookAt: [0, 0, 0] },
  { label: "Lower octant", position: [2.5, 2.0, -1.5], lookAt: [0, 0, 0] },
  { label: "Far", position: [4.2, 3.4, 2.5], lookAt: [0, 0, 0] },
];
