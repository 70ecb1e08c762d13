// Wire protocol shared with the recognition server: one JSON message per
// WebSocket frame, both directions.

export type FrameEncoding = 'rgb8-base64' | 'ppm-base64';

export interface StartMessage {
  kind: 'start';
  config?: Record<string, number | boolean>;
}

export interface FrameMessage {
  kind: 'frame';
  seq: number;
  encoding: FrameEncoding;
  width: number;
  height: number;
  data: string;
}

export interface CommitMessage {
  kind: 'commit';
}

export interface ResetMessage {
  kind: 'reset';
}

export interface EndMessage {
  kind: 'end';
}

export type SessionMessage =
  | StartMessage
  | FrameMessage
  | CommitMessage
  | ResetMessage
  | EndMessage;

export interface AckEvent {
  kind: 'ack';
  session: string;
}

export interface TrackedEvent {
  kind: 'tracked';
  seq: number;
  x: number;
  y: number;
}

export interface CharEvent {
  kind: 'char';
  label: string;
  score: number;
}

export interface SpaceEvent {
  kind: 'space';
}

export interface TextEvent {
  kind: 'text';
  text: string;
}

export interface ErrorEvent {
  kind: 'error';
  code: string;
  message: string;
}

export type SessionEvent =
  | AckEvent
  | TrackedEvent
  | CharEvent
  | SpaceEvent
  | TextEvent
  | ErrorEvent;

const EVENT_KINDS = new Set(['ack', 'tracked', 'char', 'space', 'text', 'error']);

/** Parse a server payload; throws on anything that is not a session event. */
export function parseEvent(raw: unknown): SessionEvent {
  if (typeof raw !== 'string') {
    throw new Error(`expected a text frame, got ${typeof raw}`);
  }
  const data = JSON.parse(raw);
  if (typeof data !== 'object' || data === null || !EVENT_KINDS.has(data.kind)) {
    throw new Error(`not a session event: ${raw}`);
  }
  switch (data.kind as SessionEvent['kind']) {
    case 'ack':
      if (typeof data.session !== 'string') throw new Error(`bad ack: ${raw}`);
      break;
    case 'tracked':
      if (typeof data.seq !== 'number' || typeof data.x !== 'number' || typeof data.y !== 'number')
        throw new Error(`bad tracked event: ${raw}`);
      break;
    case 'char':
      if (typeof data.label !== 'string' || typeof data.score !== 'number')
        throw new Error(`bad char event: ${raw}`);
      break;
    case 'text':
      if (typeof data.text !== 'string') throw new Error(`bad text event: ${raw}`);
      break;
    case 'error':
      if (typeof data.code !== 'string') throw new Error(`bad error event: ${raw}`);
      break;
  }
  return data as SessionEvent;
}

export function serializeMessage(message: SessionMessage): string {
  return JSON.stringify(message);
}

/** Base64 of raw bytes; works in browsers and node without Buffer. */
export function bytesToBase64(bytes: Uint8Array): string {
  if (typeof Buffer !== 'undefined') {
    return Buffer.from(bytes.buffer, bytes.byteOffset, bytes.byteLength).toString('base64');
  }
  let binary = '';
  const chunk = 0x8000;
  for (let i = 0; i < bytes.length; i += chunk) {
    binary += String.fromCharCode(...bytes.subarray(i, i + chunk));
  }
  return btoa(binary);
}
