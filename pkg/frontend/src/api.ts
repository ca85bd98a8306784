import type {
  ApiErrorBody,
  BoundsResponse,
  Color,
  CreateSessionRequest,
  Hint,
  SessionState,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, public code: string, message: string) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  // fetch is injectable so tests can run without a server
  constructor(private baseUrl = "", private fetchFn: FetchLike = fetch.bind(globalThis)) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const res = await this.fetchFn(this.baseUrl + path, init);
    if (!res.ok) {
      let err: ApiErrorBody = { code: "HttpError", message: `HTTP ${res.status}` };
      try {
        err = (await res.json()) as ApiErrorBody;
      } catch {
        // non-JSON error body; keep the fallback
      }
      throw new ApiError(res.status, err.code, err.message);
    }
    return (await res.json()) as T;
  }

  createSession(req: CreateSessionRequest): Promise<SessionState> {
    return this.request("POST", "/sessions", req);
  }

  getSession(id: string): Promise<SessionState> {
    return this.request("GET", `/sessions/${id}`);
  }

  paint(id: string, color: Color): Promise<SessionState> {
    return this.request("POST", `/sessions/${id}/moves`, { color });
  }

  // null endpoints ask the server for fresh vertices
  build(id: string, u: number | null, v: number | null): Promise<SessionState> {
    return this.request("POST", `/sessions/${id}/moves`, { u, v });
  }

  getHints(id: string): Promise<{ hints: Hint[] }> {
    return this.request("GET", `/sessions/${id}/hints`);
  }

  getBounds(k?: number): Promise<BoundsResponse> {
    const q = k === undefined ? "" : `?k=${k}`;
    return this.request("GET", `/catalog/bounds${q}`);
  }
}
