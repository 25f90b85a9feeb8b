/**
 * Clocks for the three independent animation tracks.
 *
 * Each track accumulates its own phase in [0, 1) while playing and holds
 * it while paused, so tracks with different periods advance independently
 * (the asynchronous-movement behavior of the VRML worlds).
 */

import { TrackState } from "./state.js";

export class TrackClock {
  private phase = 0;
  private lastNow: number | null = null;

  constructor(public track: TrackState) {}

  /** Advance to the given time (seconds) and return the current phase. */
  tick(now: number): number {
    if (this.lastNow !== null && this.track.playing) {
      const dt = now - this.lastNow;
      this.phase = (this.phase + dt / this.track.period) % 1;
      if (this.phase < 0) this.phase += 1;
    }
    this.lastNow = now;
    return this.phase;
  }

  setPlaying(playing: boolean): void {
    this.track.playing = playing;
  }

  setPeriod(period: number): void {
    this.track.period = period;
  }

  current(): number {
    return this.phase;
  }
}

export function makeClocks(tracks: [TrackState, TrackState, TrackState]): TrackClock[] {
  return tracks.map((t) => new TrackClock(t));
}
