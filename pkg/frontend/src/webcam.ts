// Webcam capture: frames are downscaled to the wire size before sending to
// bound bandwidth; the server pipeline is resolution-agnostic.

import { RawFrame } from './client.js';

export const CAPTURE_WIDTH = 320;
export const CAPTURE_HEIGHT = 240;

export class WebcamSource {
  private video: HTMLVideoElement | null = null;
  private canvas: OffscreenCanvas | HTMLCanvasElement | null = null;
  private ctx: OffscreenCanvasRenderingContext2D | CanvasRenderingContext2D | null = null;

  async open(): Promise<void> {
    const stream = await navigator.mediaDevices.getUserMedia({
      video: { width: { ideal: 640 }, height: { ideal: 480 } },
      audio: false,
    });
    const video = document.createElement('video');
    video.srcObject = stream;
    video.muted = true;
    await video.play();
    this.video = video;
    this.canvas = document.createElement('canvas');
    this.canvas.width = CAPTURE_WIDTH;
    this.canvas.height = CAPTURE_HEIGHT;
    this.ctx = this.canvas.getContext('2d', { willReadFrequently: true })!;
  }

  close(): void {
    const stream = this.video?.srcObject as MediaStream | null;
    stream?.getTracks().forEach((t) => t.stop());
    this.video = null;
  }

  /** Grab one downscaled RGB frame, or null before open() resolves. */
  frame(): RawFrame | null {
    if (!this.video || !this.ctx) return null;
    this.ctx.drawImage(this.video, 0, 0, CAPTURE_WIDTH, CAPTURE_HEIGHT);
    const rgba = this.ctx.getImageData(0, 0, CAPTURE_WIDTH, CAPTURE_HEIGHT).data;
    const rgb = new Uint8Array(CAPTURE_WIDTH * CAPTURE_HEIGHT * 3);
    for (let i = 0, j = 0; i < rgba.length; i += 4, j += 3) {
      rgb[j] = rgba[i];
      rgb[j + 1] = rgba[i + 1];
      rgb[j + 2] = rgba[i + 2];
    }
    return { width: CAPTURE_WIDTH, height: CAPTURE_HEIGHT, data: rgb };
  }
}
