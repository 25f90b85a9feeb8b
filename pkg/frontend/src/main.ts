/** Explorer application: control panel, three.js view, service wiring. */

import * as THREE from "three";

import {
  ApiClient,
  CharacteristicsResponse,
  PolarizationResponse,
  ServiceError,
  isAbort,
} from "./api.js";
import { cutPoints, ellipsePoint, toBufferArrays } from "./meshes.js";
import {
  ExplorerState,
  LENGTH_MAX,
  LENGTH_MIN,
  clampState,
  decodeFragment,
  encodeFragment,
} from "./state.js";
import { TrackClock, makeClocks } from "./tracks.js";
import { VIEWPOINTS } from "./viewpoints.js";

const api = new ApiClient("");

let state: ExplorerState = decodeFragment(location.hash);
let clocks: TrackClock[] = makeClocks(state.tracks);
let lastPolarization: PolarizationResponse | null = null;
let patternInFlight = false;

const $ = <T extends HTMLElement>(id: string) => document.getElementById(id) as T;

// ---------------------------------------------------------------------------
// three.js scene
// ---------------------------------------------------------------------------

const canvas = $<HTMLCanvasElement>("view");
const renderer = new THREE.WebGLRenderer({ canvas, antialias: true });
const scene = new THREE.Scene();
scene.background = new THREE.Color(0xffffff);
const camera = new THREE.PerspectiveCamera(45, 1, 0.01, 100);
camera.up.set(0, 0, 1); // physics worlds are z-up

scene.add(new THREE.AmbientLight(0xffffff, 0.75));
const keyLight = new THREE.DirectionalLight(0xffffff, 1.2);
keyLight.position.set(3, 2, 4);
scene.add(keyLight);

const world = new THREE.Group(); // spin track rotates this group
scene.add(world);

function axisLine(dir: [number, number, number], color: number) {
  const geometry = new THREE.BufferGeometry().setFromPoints([
    new THREE.Vector3(0, 0, 0),
    new THREE.Vector3(...dir),
  ]);
  return new THREE.Line(geometry, new THREE.LineBasicMaterial({ color }));
}
scene.add(axisLine([1.3, 0, 0], 0xff0000));
scene.add(axisLine([0, 1.3, 0], 0x00ff00));
scene.add(axisLine([0, 0, 1.3], 0x0000ff));

const patternMaterial = new THREE.MeshStandardMaterial({
  color: 0xd9a616,
  side: THREE.DoubleSide,
  transparent: true,
  metalness: 0.1,
  roughness: 0.65,
});
const wireMaterial = new THREE.MeshBasicMaterial({ color: 0xb8860b, wireframe: true });
const pointsMaterial = new THREE.PointsMaterial({ color: 0xb8860b, size: 0.012 });

let patternGeometry = new THREE.BufferGeometry();
const patternMesh: THREE.Mesh<THREE.BufferGeometry, THREE.Material> = new THREE.Mesh(
  patternGeometry,
  patternMaterial,
);
const patternPoints = new THREE.Points(patternGeometry, pointsMaterial);
world.add(patternMesh);
world.add(patternPoints);

const cutLines = new Map<string, THREE.LineLoop>();
for (const [plane, color] of [
  ["xoy", 0xff0000],
  ["yoz", 0x00ff00],
  ["zox", 0x0000ff],
] as const) {
  const line = new THREE.LineLoop(
    new THREE.BufferGeometry(),
    new THREE.LineBasicMaterial({ color }),
  );
  cutLines.set(plane, line);
  world.add(line);
}

const rod = new THREE.Line(
  new THREE.BufferGeometry(),
  new THREE.LineBasicMaterial({ color: 0x202020 }),
);
world.add(rod);

const fieldArrow = new THREE.ArrowHelper(
  new THREE.Vector3(0, 0, 1), new THREE.Vector3(0, 0, 0), 0.3, 0x202020, 0.08, 0.04,
);
fieldArrow.visible = false;
world.add(fieldArrow);

// minimal orbit control: drag to rotate around the origin, wheel to zoom
let dragging = false;
let lastX = 0;
let lastY = 0;
canvas.addEventListener("pointerdown", (e) => {
  dragging = true;
  lastX = e.clientX;
  lastY = e.clientY;
});
window.addEventListener("pointerup", () => (dragging = false));
window.addEventListener("pointermove", (e) => {
  if (!dragging) return;
  const dx = (e.clientX - lastX) * 0.008;
  const dy = (e.clientY - lastY) * 0.008;
  lastX = e.clientX;
  lastY = e.clientY;
  const offset = camera.position.clone();
  const radius = offset.length();
  let azimuth = Math.atan2(offset.y, offset.x) - dx;
  let polar = Math.acos(Math.min(1, Math.max(-1, offset.z / radius))) + dy;
  polar = Math.min(Math.PI - 0.05, Math.max(0.05, polar));
  camera.position.set(
    radius * Math.sin(polar) * Math.cos(azimuth),
    radius * Math.sin(polar) * Math.sin(azimuth),
    radius * Math.cos(polar),
  );
  camera.lookAt(0, 0, 0);
});
canvas.addEventListener("wheel", (e) => {
  e.preventDefault();
  camera.position.multiplyScalar(e.deltaY > 0 ? 1.08 : 0.92);
  camera.lookAt(0, 0, 0);
});

function applyViewpoint(index: number) {
  const vp = VIEWPOINTS[index - 1];
  camera.position.set(...vp.position);
  camera.lookAt(...vp.lookAt);
}

function resize() {
  const w = canvas.clientWidth;
  const h = canvas.clientHeight;
  renderer.setSize(w, h, false);
  camera.aspect = w / h;
  camera.updateProjectionMatrix();
}
window.addEventListener("resize", resize);

// ---------------------------------------------------------------------------
// rendering from service responses
// ---------------------------------------------------------------------------

function applyRenderGoal() {
  patternMesh.visible = state.goal !== "points";
  patternMesh.material = state.goal === "wireframe" ? wireMaterial : patternMaterial;
  patternMaterial.opacity = state.opacity;
  patternPoints.visible = state.goal === "points";
}

function renderPattern(mesh: Parameters<typeof toBufferArrays>[0]) {
  const arrays = toBufferArrays(mesh);
  const geometry = new THREE.BufferGeometry();
  geometry.setAttribute("position", new THREE.BufferAttribute(arrays.positions, 3));
  geometry.setIndex(new THREE.BufferAttribute(arrays.indices, 1));
  geometry.computeVertexNormals();
  patternGeometry.dispose();
  patternGeometry = geometry;
  patternMesh.geometry = geometry;
  patternPoints.geometry = geometry;
}

function renderRod() {
  const a = state.thetaDeg * (Math.PI / 180);
  const p = state.phiDeg * (Math.PI / 180);
  const axis = new THREE.Vector3(
    Math.sin(a) * Math.cos(p), Math.sin(a) * Math.sin(p), Math.cos(a),
  );
  const half = axis.clone().multiplyScalar(0.45);
  rod.geometry.dispose();
  rod.geometry = new THREE.BufferGeometry().setFromPoints([
    half.clone().negate(), half,
  ]);
}

function showError(message: string) {
  const banner = $("error-banner");
  banner.textContent = message;
  banner.style.display = "block";
}
$("error-dismiss").addEventListener("click", () => {
  $("error-banner").style.display = "none";
});

// ---------------------------------------------------------------------------
// recompute pipeline (last-write-wins per endpoint)
// ---------------------------------------------------------------------------

function syncFragment() {
  history.replaceState(null, "", `#${encodeFragment(state)}`);
}

async function recompute() {
  syncFragment();
  renderRod();
  applyRenderGoal();

  patternInFlight = true;
  const started = performance.now();
  try {
    const mesh = await api.pattern(state);
    renderPattern(mesh);
    $("latency").textContent = `${Math.round(performance.now() - started)} ms`;
  } catch (err) {
    if (!isAbort(err)) showError(err instanceof Error ? err.message : String(err));
  } finally {
    patternInFlight = false;
  }

  api
    .cuts(state)
    .then((body) => {
      for (const cut of body.cuts) {
        const line = cutLines.get(cut.plane);
        if (!line) continue;
        line.geometry.dispose();
        const geometry = new THREE.BufferGeometry();
        geometry.setAttribute("position", new THREE.BufferAttribute(cutPoints(cut), 3));
        line.geometry = geometry;
      }
    })
    .catch((err) => {
      if (!isAbort(err)) showError(String(err));
    });

  api
    .polarization(state)
    .then((pol) => {
      lastPolarization = pol;
      // readouts show the service values verbatim
      $("axial-ratio").textContent = pol.axial_ratio === null ? "infinite" : String(pol.axial_ratio);
      $("handedness").textContent = pol.handedness;
      $("classification").textContent = pol.classification;
    })
    .catch((err) => {
      if (!isAbort(err)) showError(String(err));
    });

  api
    .characteristics(state)
    .then((body: CharacteristicsResponse) => {
      $("anti-resonant-badge").style.display = "none";
      $("directivity").textContent = String(body.directivity);
      $("r-in").textContent = `${body.r_in_ohm} ohm`;
      $("theta-max").textContent = `${body.theta_max_deg} deg`;
    })
    .catch((err) => {
      if (isAbort(err)) return;
      if (err instanceof ServiceError && err.body.code === "anti_resonant") {
        $("anti-resonant-badge").style.display = "inline-block";
        $("directivity").textContent = "-";
        $("r-in").textContent = "anti-resonant";
        $("theta-max").textContent = "-";
      } else {
        showError(String(err));
      }
    });
}

// ---------------------------------------------------------------------------
// controls
// ---------------------------------------------------------------------------

function bindSlider(id: string, get: () => number, set: (v: number) => void) {
  const input = $<HTMLInputElement>(id);
  const label = $(`${id}-value`);
  input.value = String(get());
  label.textContent = String(get());
  input.addEventListener("input", () => {
    set(Number(input.value));
    state = clampState(state);
    label.textContent = String(get());
    void recompute();
  });
  return () => {
    input.value = String(get());
    label.textContent = String(get());
  };
}

const refreshers: Array<() => void> = [];

refreshers.push(bindSlider("theta", () => state.thetaDeg, (v) => (state.thetaDeg = v)));
refreshers.push(bindSlider("phi", () => state.phiDeg, (v) => (state.phiDeg = v)));
refreshers.push(bindSlider("length", () => state.lengthWl, (v) => (state.lengthWl = v)));
refreshers.push(bindSlider("opacity", () => state.opacity, (v) => (state.opacity = v)));

const gridSelect = $<HTMLSelectElement>("grid");
gridSelect.value = state.grid;
gridSelect.addEventListener("change", () => {
  state.grid = gridSelect.value as ExplorerState["grid"];
  void recompute();
});

const goalSelect = $<HTMLSelectElement>("goal");
goalSelect.value = state.goal;
goalSelect.addEventListener("change", () => {
  state.goal = goalSelect.value as ExplorerState["goal"];
  applyRenderGoal();
  syncFragment();
});

const vpSelect = $<HTMLSelectElement>("viewpoint");
VIEWPOINTS.forEach((vp, i) => {
  const option = document.createElement("option");
  option.value = String(i + 1);
  option.textContent = `${i + 1}: ${vp.label}`;
  vpSelect.appendChild(option);
});
vpSelect.value = String(state.viewpoint);
vpSelect.addEventListener("change", () => {
  state.viewpoint = Number(vpSelect.value);
  applyViewpoint(state.viewpoint);
  syncFragment();
});

for (let i = 0; i < 3; i++) {
  const play = $<HTMLInputElement>(`track${i + 1}-play`);
  const period = $<HTMLInputElement>(`track${i + 1}-period`);
  play.checked = state.tracks[i].playing;
  period.value = String(state.tracks[i].period);
  play.addEventListener("change", () => {
    clocks[i].setPlaying(play.checked);
    syncFragment();
  });
  period.addEventListener("change", () => {
    clocks[i].setPeriod(Number(period.value) || state.tracks[i].period);
    syncFragment();
  });
}

async function download(format: "wrl" | "svg") {
  try {
    const response = await fetch(api.exportUrl(state, format));
    if (!response.ok) {
      const body = await response.json();
      showError(body.message ?? `export failed (${response.status})`);
      return;
    }
    const blob = await response.blob();
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = `explorer.${format}`;
    a.click();
    URL.revokeObjectURL(a.href);
  } catch (err) {
    showError(String(err));
  }
}
$("export-wrl").addEventListener("click", () => void download("wrl"));
$("export-svg").addEventListener("click", () => void download("svg"));

window.addEventListener("hashchange", () => {
  state = decodeFragment(location.hash);
  clocks = makeClocks(state.tracks);
  refreshers.forEach((f) => f());
  gridSelect.value = state.grid;
  goalSelect.value = state.goal;
  vpSelect.value = String(state.viewpoint);
  applyViewpoint(state.viewpoint);
  void recompute();
});

// ---------------------------------------------------------------------------
// animation loop
// ---------------------------------------------------------------------------

let lastSweepLength = state.lengthWl;

function frame(nowMs: number) {
  const now = nowMs / 1000;
  const [phasePhase, lengthPhase, spinPhase] = clocks.map((c) => c.tick(now));

  // track 1: field arrow sweeps the polarization ellipse at the probe point
  if (lastPolarization && state.tracks[0].playing) {
    fieldArrow.visible = true;
    const tip = ellipsePoint(lastPolarization.major, lastPolarization.minor, phasePhase);
    const p = ((state.phiDeg + 90) % 360) * (Math.PI / 180);
    fieldArrow.position.set(1.15 * Math.cos(p), 1.15 * Math.sin(p), 0);
    const dir = new THREE.Vector3(...tip);
    const len = Math.max(dir.length(), 1e-6);
    fieldArrow.setDirection(dir.normalize());
    fieldArrow.setLength(0.35 * len, 0.08, 0.04);
  } else if (!state.tracks[0].playing) {
    fieldArrow.visible = false;
  }

  // track 2: slow length sweep, recomputing as the service keeps up
  if (state.tracks[1].playing && !patternInFlight) {
    const target = LENGTH_MIN + lengthPhase * (LENGTH_MAX - LENGTH_MIN);
    if (Math.abs(target - lastSweepLength) >= 0.05) {
      lastSweepLength = target;
      state.lengthWl = Math.round(target * 100) / 100;
      refreshers.forEach((f) => f());
      void recompute();
    }
  }

  // track 3: scene spin about +z
  if (state.tracks[2].playing) {
    world.rotation.z = 2 * Math.PI * spinPhase;
  }

  resize();
  renderer.render(scene, camera);
  requestAnimationFrame(frame);
}

applyViewpoint(state.viewpoint);
applyRenderGoal();
void recompute();
requestAnimationFrame(frame);
