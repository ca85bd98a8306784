// Shapes mirrored from the service's api_schema.json. The client renders
// these verbatim; it never derives game outcomes on its own.

export type Color = "R" | "B";
export type HumanRole = "painter" | "builder";
export type Policy = "book_then_solver" | "solver_only";
export type Status = "awaiting_human" | "awaiting_engine" | "finished";
export type Winner = "builder" | "painter" | null;

export interface TranscriptEntry {
  round: number;
  u: number;
  v: number;
  color: Color;
}

export interface PendingEdge {
  u: number;
  v: number;
}

export interface PendingForces {
  forces_red: boolean;
  forces_blue: boolean;
  double_forced: boolean;
}

export interface WinningCopy {
  color: Color;
  target: string;
  vertices: number[];
  edges: [number, number][];
}

export interface BoardState {
  n: number;
  names: string[];
  edges: TranscriptEntry[];
}

export interface SessionState {
  id: string;
  status: Status;
  human_role: HumanRole;
  policy: Policy;
  cap: number;
  red_target: string;
  blue_target: string;
  rounds_played: number;
  winner: Winner;
  board: BoardState;
  pending_edge: PendingEdge | null;
  pending_forces: PendingForces | null;
  winning_copy: WinningCopy | null;
  transcript: TranscriptEntry[];
}

export interface Hint {
  u: number;
  v: number;
  forces_red: boolean;
  forces_blue: boolean;
  double_forced: boolean;
  pending: boolean;
}

export interface CatalogEntry {
  red: string;
  blue: string;
  value: number;
  source: string;
  checkable: string;
}

export interface PathBounds {
  k: number;
  lower: number;
  upper: number;
  line: string;
}

export interface BoundsResponse {
  entries: CatalogEntry[];
  path_bounds: PathBounds[];
}

export interface CreateSessionRequest {
  red_target: string;
  blue_target: string;
  human_role: HumanRole;
  cap: number;
  policy?: Policy;
}

export interface ApiErrorBody {
  code: string;
  message: string;
}
