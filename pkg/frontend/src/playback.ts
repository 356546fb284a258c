// Step playback. Execution already finished server-side; this only
// paces the recorded step positions for presentation.

import type { StepRecord } from "./types.js";

export class Playback {
  private steps: StepRecord[] = [];
  private cursor = 0;
  stepsPerSecond = 120;

  get pending(): number {
    return this.steps.length - this.cursor;
  }

  get total(): number {
    return this.steps.length;
  }

  enqueue(steps: StepRecord[]): void {
    this.steps.push(...steps);
  }

  /** Advance one frame; null when playback has finished. */
  next(): StepRecord | null {
    if (this.cursor >= this.steps.length) return null;
    return this.steps[this.cursor++];
  }

  /** Drain everything, returning the last step (for tests and instant mode). */
  finish(): StepRecord | null {
    let last: StepRecord | null = null;
    for (let s = this.next(); s !== null; s = this.next()) last = s;
    return last;
  }

  clear(): void {
    this.steps = [];
    this.cursor = 0;
  }
}
