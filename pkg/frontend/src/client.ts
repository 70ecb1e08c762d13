// Session client: owns the socket, the frame sequence numbering, and the
// UI-facing state. Recognition state is never derived locally; live_text
// always comes from the server's text events.

import {
  FrameEncoding,
  SessionEvent,
  bytesToBase64,
  parseEvent,
  serializeMessage,
} from './protocol.js';

export type Mode = 'webcam' | 'virtual-finger';

export interface Connection {
  state: 'disconnected' | 'connected';
  sessionId: string | null;
}

export interface UiState {
  mode: Mode;
  connection: Connection;
  liveText: string;
  trajectory: Array<{ x: number; y: number }>;
  lastScore: number | null;
  lastError: string | null;
}

export interface RawFrame {
  width: number;
  height: number;
  data: Uint8Array; // row-major RGB8
}

/** Structural subset shared by browser WebSocket and the ws package. */
export interface SocketLike {
  send(data: string): void;
  close(): void;
  onmessage: ((ev: any) => void) | null;
  onclose: ((ev?: any) => void) | null;
}

export function initialState(mode: Mode = 'virtual-finger'): UiState {
  return {
    mode,
    connection: { state: 'disconnected', sessionId: null },
    liveText: '',
    trajectory: [],
    lastScore: null,
    lastError: null,
  };
}

export class AirwriteClient {
  readonly state: UiState;
  /** char/space events in arrival order, for consistency checks. */
  readonly tokenLog: string[] = [];
  private socket: SocketLike | null = null;
  private nextSeq = 0;
  private listeners: Array<(ev: SessionEvent) => void> = [];

  constructor(mode: Mode = 'virtual-finger') {
    this.state = initialState(mode);
  }

  /** Attach an already-created socket (browser WebSocket or ws instance). */
  attach(socket: SocketLike): void {
    this.socket = socket;
    socket.onmessage = (ev) => this.handleRaw(ev.data);
    socket.onclose = () => {
      this.state.connection = { state: 'disconnected', sessionId: null };
    };
  }

  onEvent(listener: (ev: SessionEvent) => void): void {
    this.listeners.push(listener);
  }

  start(config?: Record<string, number | boolean>): void {
    this.send(serializeMessage({ kind: 'start', config }));
  }

  sendFrame(frame: RawFrame, encoding: FrameEncoding = 'rgb8-base64'): number {
    const seq = this.nextSeq++;
    this.send(
      serializeMessage({
        kind: 'frame',
        seq,
        encoding,
        width: frame.width,
        height: frame.height,
        data: bytesToBase64(frame.data),
      }),
    );
    return seq;
  }

  commit(): void {
    this.send(serializeMessage({ kind: 'commit' }));
  }

  reset(): void {
    this.send(serializeMessage({ kind: 'reset' }));
    this.state.trajectory = [];
    this.state.liveText = '';
    this.state.lastScore = null;
    this.tokenLog.length = 0;
  }

  end(): void {
    this.send(serializeMessage({ kind: 'end' }));
  }

  private send(payload: string): void {
    if (!this.socket) throw new Error('no socket attached');
    this.socket.send(payload);
  }

  private handleRaw(data: unknown): void {
    let event: SessionEvent;
    try {
      event = parseEvent(typeof data === 'string' ? data : String(data));
    } catch (err) {
      this.state.lastError = String(err);
      return;
    }
    this.apply(event);
    for (const listener of this.listeners) listener(event);
  }

  /** Fold one server event into the UI state. */
  apply(event: SessionEvent): void {
    switch (event.kind) {
      case 'ack':
        this.state.connection = { state: 'connected', sessionId: event.session };
        break;
      case 'tracked':
        this.state.trajectory.push({ x: event.x, y: event.y });
        break;
      case 'char':
        this.state.lastScore = event.score;
        this.state.trajectory = [];
        this.tokenLog.push(event.label);
        break;
      case 'space':
        this.state.trajectory = [];
        this.tokenLog.push(' ');
        break;
      case 'text':
        this.state.liveText = event.text;
        break;
      case 'error':
        this.state.lastError = `${event.code}: ${event.message}`;
        break;
    }
  }
}
