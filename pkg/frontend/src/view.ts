import type { SessionState } from "./types.js";

// Pure text helpers for the status strip and the result banner. Every fact
// shown comes straight out of the server's session state.

export function roundLine(state: SessionState): string {
  if (state.status === "finished") {
    return `finished after round ${state.rounds_played}`;
  }
  return `round ${state.rounds_played + 1} of ≤ ${state.cap}`;
}

export function bannerText(state: SessionState): string | null {
  if (state.status !== "finished") return null;
  if (state.winner === "builder") {
    const copy = state.winning_copy;
    const what = copy
      ? `${copy.color === "R" ? "red" : "blue"} ${copy.target} complete`
      : "target complete";
    return `Builder wins in ≤ ${state.cap} — ${what} at round ${state.rounds_played}`;
  }
  return `Painter survives ${state.cap} rounds — no target completed`;
}

export function turnLine(state: SessionState): string {
  if (state.status === "finished") return "game over";
  if (state.human_role === "painter") {
    const p = state.pending_edge;
    return p ? "your turn: color the offered edge" : "waiting for the builder";
  }
  return state.pending_edge ? "engine is thinking" : "your turn: pick an edge";
}

export function forcesLine(state: SessionState): string | null {
  const f = state.pending_forces;
  if (!f) return null;
  if (f.double_forced) return "double-forced: either color completes a target";
  if (f.forces_red) return "forces red: blue here would complete the blue target";
  if (f.forces_blue) return "forces blue: red here would complete the red target";
  return null;
}
