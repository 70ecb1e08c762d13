// Page wiring: pointer/webcam capture loop, socket lifecycle, overlay.

import { AirwriteClient, Mode, RawFrame } from './client.js';
import { buildScene, drawScene } from './overlay.js';
import { FRAME_HEIGHT, FRAME_WIDTH, VirtualFinger } from './virtualFinger.js';
import { WebcamSource } from './webcam.js';

const TARGET_FPS = 30;
const VIEW_SCALE = 2; // canvas shows the 320x240 frame doubled

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const canvas = el<HTMLCanvasElement>('view');
const ctx = canvas.getContext('2d')!;
const urlInput = el<HTMLInputElement>('server-url');
const modeSelect = el<HTMLSelectElement>('mode');
const textOut = el<HTMLDivElement>('live-text');
const statusOut = el<HTMLDivElement>('status');

canvas.width = FRAME_WIDTH * VIEW_SCALE;
canvas.height = FRAME_HEIGHT * VIEW_SCALE;

let client = new AirwriteClient(modeSelect.value as Mode);
const finger = new VirtualFinger();
const webcam = new WebcamSource();
let pointer = { x: 0, y: 0, down: false };
let ticker: number | null = null;

function connect(): void {
  disconnect();
  client = new AirwriteClient(modeSelect.value as Mode);
  const socket = new WebSocket(urlInput.value);
  socket.onopen = () => {
    client.attach(socket);
    client.start();
    startCaptureLoop();
  };
  socket.onerror = () => {
    statusOut.textContent = 'connection failed';
  };
  client.onEvent(() => render());
}

function disconnect(): void {
  if (ticker !== null) {
    clearInterval(ticker);
    ticker = null;
  }
  webcam.close();
}

function startCaptureLoop(): void {
  if (client.state.mode === 'webcam') {
    webcam.open().catch((err) => {
      // camera denied: report it and fall back to the virtual finger
      statusOut.textContent = `camera unavailable (${err}); using virtual finger`;
      client.state.mode = 'virtual-finger';
    });
  }
  ticker = window.setInterval(() => {
    if (client.state.connection.state !== 'connected') return;
    let frame: RawFrame | null;
    if (client.state.mode === 'webcam') {
      frame = webcam.frame();
    } else {
      frame = finger.frame(pointer);
    }
    if (frame) client.sendFrame(frame);
    render();
  }, 1000 / TARGET_FPS);
}

function render(): void {
  const scene = buildScene(client.state);
  ctx.save();
  ctx.scale(VIEW_SCALE, VIEW_SCALE);
  // tracked coordinates are camera-frame (mirrored); flip for display so
  // the trail follows the pointer
  ctx.translate(FRAME_WIDTH, 0);
  ctx.scale(-1, 1);
  drawScene(ctx, scene, FRAME_WIDTH, FRAME_HEIGHT);
  ctx.restore();
  textOut.textContent = client.state.liveText || '(nothing yet)';
  statusOut.textContent =
    client.state.lastError ??
    (client.state.connection.state === 'connected'
      ? `session ${client.state.connection.sessionId}`
      : 'disconnected');
}

canvas.addEventListener('mousemove', (ev) => {
  const rect = canvas.getBoundingClientRect();
  pointer.x = (ev.clientX - rect.left) / VIEW_SCALE;
  pointer.y = (ev.clientY - rect.top) / VIEW_SCALE;
});
canvas.addEventListener('mousedown', (ev) => {
  if (ev.button === 0) pointer.down = true;
});
window.addEventListener('mouseup', (ev) => {
  if (ev.button === 0) pointer.down = false;
});

el<HTMLButtonElement>('connect').addEventListener('click', connect);
el<HTMLButtonElement>('commit').addEventListener('click', () => client.commit());
el<HTMLButtonElement>('reset').addEventListener('click', () => {
  client.reset();
  render();
});
el<HTMLButtonElement>('end').addEventListener('click', () => client.end());
