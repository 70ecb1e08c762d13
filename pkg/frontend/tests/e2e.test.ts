// End-to-end acceptance against a real recognition server: scripted
// virtual-finger traces, protocol conformance, event-order checks.

import { ChildProcess, spawn } from 'node:child_process';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';
import WebSocket from 'ws';

import { AirwriteClient } from '../src/client.js';
import { SessionEvent } from '../src/protocol.js';
import { VirtualFinger } from '../src/virtualFinger.js';

const PORT = 8990 + (process.pid % 500);
const URL = `ws://127.0.0.1:${PORT}/`;
const DWELL_FRAMES = 15;
const ABSENCE_FRAMES = 20;

let server: ChildProcess;

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

async function connectOnce(): Promise<WebSocket> {
  return new Promise((resolve, reject) => {
    const ws = new WebSocket(URL);
    ws.once('open', () => resolve(ws));
    ws.once('error', reject);
  });
}

async function connectWithRetry(timeoutMs = 30000): Promise<WebSocket> {
  const deadline = Date.now() + timeoutMs;
  for (;;) {
    try {
      return await connectOnce();
    } catch (err) {
      if (Date.now() > deadline) throw err;
      await sleep(250);
    }
  }
}

beforeAll(async () => {
  server = spawn('python3', ['-m', 'airwrite.cli', 'serve', '--port', String(PORT)], {
    stdio: ['ignore', 'pipe', 'pipe'],
  });
  const probe = await connectWithRetry();
  probe.close();
}, 60000);

afterAll(() => {
  server?.kill();
});

class Harness {
  client = new AirwriteClient();
  finger = new VirtualFinger();
  events: SessionEvent[] = [];
  private waiters: Array<{
    predicate: (ev: SessionEvent) => boolean;
    resolve: (ev: SessionEvent) => void;
  }> = [];

  constructor(private ws: WebSocket) {
    this.client.attach(ws as never);
    this.client.onEvent((ev) => {
      this.events.push(ev);
      this.waiters = this.waiters.filter((w) => {
        if (w.predicate(ev)) {
          w.resolve(ev);
          return false;
        }
        return true;
      });
    });
  }

  await(predicate: (ev: SessionEvent) => boolean, timeoutMs = 30000): Promise<SessionEvent> {
    const existing = this.events.find(predicate);
    if (existing) return Promise.resolve(existing);
    return new Promise((resolve, reject) => {
      const timer = setTimeout(
        () => reject(new Error(`timed out waiting for event; got ${JSON.stringify(this.events.slice(-5))}`)),
        timeoutMs,
      );
      this.waiters.push({
        predicate,
        resolve: (ev) => {
          clearTimeout(timer);
          resolve(ev);
        },
      });
    });
  }

  async start(config?: Record<string, number | boolean>): Promise<void> {
    const seen = this.events.length;
    this.client.start(config);
    await this.await((ev) => ev.kind === 'ack' && this.events.length > seen);
  }

  /** Send one pointer frame and wait for its tracked event when the dot shows. */
  async pointerFrame(x: number, y: number, down: boolean): Promise<void> {
    const frame = this.finger.frame({ x, y, down });
    const seq = this.client.sendFrame(frame);
    if (down) {
      await this.await((ev) => ev.kind === 'tracked' && ev.seq === seq);
    } else {
      await sleep(2); // dot-free frames produce no event; just pace the stream
    }
  }

  /** Trace a polyline with the button held, then dwell to finish the letter. */
  async traceLetter(points: Array<[number, number]>, samples: number): Promise<void> {
    const path = samplePolyline(points, samples);
    for (const [x, y] of path) {
      await this.pointerFrame(x, y, true);
    }
    const [lx, ly] = path[path.length - 1];
    const before = this.client.tokenLog.length;
    // the dwell threshold is reached exactly on the Nth stationary frame
    for (let i = 0; i < DWELL_FRAMES; i++) {
      await this.pointerFrame(lx, ly, true);
    }
    await this.await(() => this.client.tokenLog.length > before);
    // every char event is followed by a text event reflecting it
    const expected = this.client.tokenLog.join('').trimEnd();
    await this.await((ev) => ev.kind === 'text' && ev.text === expected);
  }

  async gap(frames: number): Promise<void> {
    for (let i = 0; i < frames; i++) {
      await this.pointerFrame(0, 0, false);
    }
  }

  close(): void {
    this.ws.close();
  }
}

function samplePolyline(points: Array<[number, number]>, samples: number): Array<[number, number]> {
  const lengths: number[] = [0];
  for (let i = 1; i < points.length; i++) {
    const [x0, y0] = points[i - 1];
    const [x1, y1] = points[i];
    lengths.push(lengths[i - 1] + Math.hypot(x1 - x0, y1 - y0));
  }
  const total = lengths[lengths.length - 1];
  const out: Array<[number, number]> = [];
  for (let s = 0; s < samples; s++) {
    const target = (total * s) / (samples - 1);
    let k = lengths.findIndex((l) => l >= target);
    if (k <= 0) k = 1;
    const segLen = lengths[k] - lengths[k - 1];
    const t = segLen === 0 ? 0 : (target - lengths[k - 1]) / segLen;
    const [x0, y0] = points[k - 1];
    const [x1, y1] = points[k];
    out.push([x0 + t * (x1 - x0), y0 + t * (y1 - y0)]);
  }
  return out;
}

// letter geometry in pointer coordinates (320x240 frame)
const H_PATH: Array<[number, number]> = [
  [110, 60],
  [110, 180],
  [110, 120],
  [210, 120],
  [210, 60],
  [210, 180],
];
const I_PATH: Array<[number, number]> = [
  [160, 60],
  [160, 180],
];

describe('virtual-finger end to end', () => {
  it('scripted HI trace with a button-up gap yields live text HI', async () => {
    const h = new Harness(await connectWithRetry());
    try {
      await h.start();
      await h.traceLetter(H_PATH, 40);
      expect(h.client.state.liveText).toBe('H');
      await h.gap(ABSENCE_FRAMES - 12); // below the space threshold
      await h.traceLetter(I_PATH, 25);
      expect(h.client.state.liveText).toBe('HI');
      expect(h.client.tokenLog.join('')).toBe('HI');
      // trajectory was cleared by the final char event
      expect(h.client.state.trajectory).toEqual([]);
    } finally {
      h.close();
    }
  }, 120000);

  it('releasing the button for the absence window inserts a space', async () => {
    const h = new Harness(await connectWithRetry());
    try {
      await h.start();
      await h.traceLetter(I_PATH, 25);
      expect(h.client.state.liveText).toBe('I');
      await h.gap(ABSENCE_FRAMES + 2);
      await h.await((ev) => ev.kind === 'space');
      await h.traceLetter(I_PATH, 25);
      expect(h.client.state.liveText).toBe('I I');
    } finally {
      h.close();
    }
  }, 120000);
});

describe('protocol conformance', () => {
  it('rejects an out-of-order frame with an error event and recovers', async () => {
    const h = new Harness(await connectWithRetry());
    try {
      await h.start();
      await h.pointerFrame(160, 120, true); // seq 0
      await h.pointerFrame(164, 124, true); // seq 1
      // replay a stale sequence number
      const stale = h.finger.frame({ x: 170, y: 130, down: true });
      (h.client as unknown as { nextSeq: number }).nextSeq = 0;
      h.client.sendFrame(stale); // seq 0 again
      const err = await h.await((ev) => ev.kind === 'error');
      expect(err).toMatchObject({ kind: 'error', code: 'out_of_order' });
      // the connection stays usable with a fresh higher seq
      (h.client as unknown as { nextSeq: number }).nextSeq = 2;
      await h.pointerFrame(168, 128, true); // seq 2
    } finally {
      h.close();
    }
  }, 120000);

  it('commit forces character completion with the exact event sequence', async () => {
    const h = new Harness(await connectWithRetry());
    try {
      await h.start();
      const path = samplePolyline(I_PATH, 12);
      for (const [x, y] of path) {
        await h.pointerFrame(x, y, true);
      }
      const before = h.events.length;
      h.client.commit();
      await h.await((ev) => ev.kind === 'text');
      const after = h.events.slice(before);
      expect(after.map((e) => e.kind)).toEqual(['char', 'text']);
      expect(after[0]).toMatchObject({ kind: 'char', label: 'I' });
      expect(after[1]).toMatchObject({ kind: 'text', text: 'I' });
      expect(h.client.state.liveText).toBe('I');
    } finally {
      h.close();
    }
  }, 120000);
});
