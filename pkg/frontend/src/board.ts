import type { Hint, SessionState } from "./types.js";

// Pure SVG rendering: a string in, a string out, no DOM access. The first
// six vertices sit on a hexagon, the seventh in the center (the classic
// diagram layout for these games), any further ones on an outer ring.

const SIZE = 420;
const CX = SIZE / 2;
const CY = SIZE / 2;
const HEX_R = 150;
const OUTER_R = 196;

export interface Point {
  x: number;
  y: number;
}

export function vertexPositions(n: number): Point[] {
  const pts: Point[] = [];
  for (let i = 0; i < n; i++) {
    if (i < 6) {
      const a = (Math.PI / 180) * (-90 + 60 * i);
      pts.push({ x: CX + HEX_R * Math.cos(a), y: CY + HEX_R * Math.sin(a) });
    } else if (i === 6) {
      pts.push({ x: CX, y: CY });
    } else {
      const a = (Math.PI / 180) * (-60 + 40 * (i - 7));
      pts.push({ x: CX + OUTER_R * Math.cos(a), y: CY + OUTER_R * Math.sin(a) });
    }
  }
  return pts;
}

// Display names A..Z, AA, AB, ... matching the server's convention.
export function vertexName(i: number): string {
  if (i < 0) throw new Error(`vertex id ${i} is negative`);
  let name = "";
  let k = i;
  do {
    name = String.fromCharCode(65 + (k % 26)) + name;
    k = Math.floor(k / 26) - 1;
  } while (k >= 0);
  return name;
}

function round1(x: number): number {
  return Math.round(x * 10) / 10;
}

function edgeKey(u: number, v: number): string {
  return u < v ? `${u}-${v}` : `${v}-${u}`;
}

export interface RenderOptions {
  selected?: Array<number | "fresh">;
  hints?: Hint[] | null;
  clickableVertices?: boolean;
}

export function renderBoard(state: SessionState, opts: RenderOptions = {}): string {
  const pending = state.pending_edge;
  const hints = opts.hints ?? [];
  let count = state.board.n;
  if (pending) count = Math.max(count, pending.u + 1, pending.v + 1);
  for (const h of hints) count = Math.max(count, h.u + 1, h.v + 1);
  // always show at least the opening hexagon so the board doesn't jump around
  count = Math.max(count, 6);

  const pts = vertexPositions(count);
  const winEdges = new Set((state.winning_copy?.edges ?? []).map(([u, v]) => edgeKey(u, v)));
  const winVertices = new Set(state.winning_copy?.vertices ?? []);
  const parts: string[] = [];
  parts.push(
    `<svg class="board" viewBox="0 0 ${SIZE} ${SIZE}" xmlns="http://www.w3.org/2000/svg">`,
  );

  for (const h of hints) {
    if (pending && edgeKey(h.u, h.v) === edgeKey(pending.u, pending.v)) continue;
    const a = pts[h.u];
    const b = pts[h.v];
    const flags =
      (h.double_forced ? " double-forced" : "") +
      (h.forces_red ? " forces-red" : "") +
      (h.forces_blue ? " forces-blue" : "");
    parts.push(
      `<line class="hint${flags}" x1="${round1(a.x)}" y1="${round1(a.y)}" ` +
        `x2="${round1(b.x)}" y2="${round1(b.y)}"/>`,
    );
  }

  for (const e of state.board.edges) {
    const a = pts[e.u];
    const b = pts[e.v];
    const cls = e.color === "R" ? "edge red" : "edge blue";
    const win = winEdges.has(edgeKey(e.u, e.v)) ? " win" : "";
    parts.push(
      `<line class="${cls}${win}" x1="${round1(a.x)}" y1="${round1(a.y)}" ` +
        `x2="${round1(b.x)}" y2="${round1(b.y)}"/>`,
    );
    const mx = round1((a.x + b.x) / 2 + 9);
    const my = round1((a.y + b.y) / 2 - 4);
    parts.push(`<text class="round-label" x="${mx}" y="${my}">${e.round}</text>`);
  }

  if (pending) {
    const a = pts[pending.u];
    const b = pts[pending.v];
    parts.push(
      `<line class="edge pending" x1="${round1(a.x)}" y1="${round1(a.y)}" ` +
        `x2="${round1(b.x)}" y2="${round1(b.y)}"/>`,
    );
  }

  const selected = new Set(opts.selected ?? []);
  for (let i = 0; i < count; i++) {
    const p = pts[i];
    const fresh = i >= state.board.n;
    const cls =
      "vertex" +
      (fresh ? " fresh" : "") +
      (winVertices.has(i) ? " win" : "") +
      (selected.has(i) ? " selected" : "") +
      (opts.clickableVertices ? " clickable" : "");
    const name = i < state.board.names.length ? state.board.names[i] : vertexName(i);
    parts.push(`<g class="${cls}" data-v="${i}">`);
    parts.push(`<circle cx="${round1(p.x)}" cy="${round1(p.y)}" r="16"/>`);
    parts.push(`<text x="${round1(p.x)}" y="${round1(p.y + 5)}">${name}</text>`);
    parts.push(`</g>`);
  }

  parts.push(`</svg>`);
  return parts.join("");
}
