// Overlay rendering, split into a pure scene builder (testable) and a thin
// canvas painter.

import { UiState } from './client.js';

export const TRACK_BOX_SIZE = 24;

export type SceneNode =
  | { kind: 'polyline'; points: Array<{ x: number; y: number }> }
  | { kind: 'box'; x: number; y: number; size: number }
  | { kind: 'text'; value: string; score: number | null }
  | { kind: 'status'; value: string };

/** Everything the overlay shows, as data. */
export function buildScene(state: UiState): SceneNode[] {
  const nodes: SceneNode[] = [];
  if (state.connection.state !== 'connected') {
    nodes.push({ kind: 'status', value: 'disconnected' });
  } else {
    nodes.push({ kind: 'status', value: `session ${state.connection.sessionId}` });
  }
  if (state.trajectory.length > 1) {
    nodes.push({ kind: 'polyline', points: [...state.trajectory] });
  }
  const last = state.trajectory[state.trajectory.length - 1];
  if (last) {
    nodes.push({ kind: 'box', x: last.x, y: last.y, size: TRACK_BOX_SIZE });
  }
  nodes.push({ kind: 'text', value: state.liveText, score: state.lastScore });
  return nodes;
}

/** Paint a scene onto a 2D canvas context. */
export function drawScene(
  ctx: CanvasRenderingContext2D,
  scene: SceneNode[],
  width: number,
  height: number,
): void {
  ctx.clearRect(0, 0, width, height);
  for (const node of scene) {
    switch (node.kind) {
      case 'polyline': {
        ctx.strokeStyle = '#ff3333';
        ctx.lineWidth = 3;
        ctx.beginPath();
        ctx.moveTo(node.points[0].x, node.points[0].y);
        for (const p of node.points.slice(1)) ctx.lineTo(p.x, p.y);
        ctx.stroke();
        break;
      }
      case 'box':
        ctx.strokeStyle = '#33ff66';
        ctx.lineWidth = 2;
        ctx.strokeRect(node.x - node.size / 2, node.y - node.size / 2, node.size, node.size);
        break;
      case 'text': {
        ctx.fillStyle = '#ffffff';
        ctx.font = '28px monospace';
        const score = node.score === null ? '' : `  (${node.score.toFixed(2)})`;
        ctx.fillText(`${node.value}${score}`, 10, height - 14);
        break;
      }
      case 'status':
        ctx.fillStyle = '#aaaaaa';
        ctx.font = '12px monospace';
        ctx.fillText(node.value, 10, 16);
        break;
    }
  }
}
