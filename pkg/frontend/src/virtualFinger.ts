// Virtual-finger input: frames are synthesized locally with a red dot at
// the pointer while the primary button is held, and left dot-free when it
// is not. The whole recognition loop is exercisable without a camera or
// red tape; releasing the button long enough produces a space.

import { RawFrame } from './client.js';

export const FRAME_WIDTH = 320;
export const FRAME_HEIGHT = 240;
export const DOT_RADIUS = 6;
export const DOT_COLOR: [number, number, number] = [255, 30, 30];
export const BACKGROUND: [number, number, number] = [120, 120, 120];

export interface PointerState {
  x: number; // in frame coordinates, [0, width)
  y: number;
  down: boolean;
}

export class VirtualFinger {
  private readonly buffer: Uint8Array;
  private readonly background: Uint8Array;
  readonly width = FRAME_WIDTH;
  readonly height = FRAME_HEIGHT;

  constructor() {
    this.background = new Uint8Array(this.width * this.height * 3);
    for (let i = 0; i < this.background.length; i += 3) {
      this.background[i] = BACKGROUND[0];
      this.background[i + 1] = BACKGROUND[1];
      this.background[i + 2] = BACKGROUND[2];
    }
    this.buffer = new Uint8Array(this.background.length);
  }

  /**
   * Render the frame the camera would have seen. The dot is painted
   * mirrored (like a front camera) so the server's mirror correction
   * reconstructs the glyph the user actually traced.
   */
  frame(pointer: PointerState | null): RawFrame {
    this.buffer.set(this.background);
    if (pointer && pointer.down) {
      const cx = this.width - 1 - Math.round(clamp(pointer.x, DOT_RADIUS, this.width - 1 - DOT_RADIUS));
      const cy = Math.round(clamp(pointer.y, DOT_RADIUS, this.height - 1 - DOT_RADIUS));
      paintDot(this.buffer, this.width, cx, cy);
    }
    return { width: this.width, height: this.height, data: this.buffer };
  }
}

function clamp(v: number, lo: number, hi: number): number {
  return Math.min(Math.max(v, lo), hi);
}

function paintDot(pixels: Uint8Array, width: number, cx: number, cy: number): void {
  const r2 = DOT_RADIUS * DOT_RADIUS;
  for (let dy = -DOT_RADIUS; dy <= DOT_RADIUS; dy++) {
    for (let dx = -DOT_RADIUS; dx <= DOT_RADIUS; dx++) {
      if (dx * dx + dy * dy > r2) continue;
      const offset = ((cy + dy) * width + (cx + dx)) * 3;
      pixels[offset] = DOT_COLOR[0];
      pixels[offset + 1] = DOT_COLOR[1];
      pixels[offset + 2] = DOT_COLOR[2];
    }
  }
}
