import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

function fakeFetch(status: number, body: unknown) {
  const calls: Array<{ url: string; init?: RequestInit }> = [];
  const fn = async (url: string, init?: RequestInit) => {
    calls.push({ url, init });
    return new Response(JSON.stringify(body), {
      status,
      headers: { "content-type": "application/json" },
    });
  };
  return { fn, calls };
}

describe("ApiClient", () => {
  it("posts the session request and returns the parsed state", async () => {
    const { fn, calls } = fakeFetch(201, { id: "abc", status: "awaiting_human" });
    const api = new ApiClient("http://x", fn);
    const s = await api.createSession({
      red_target: "C4",
      blue_target: "P6",
      human_role: "painter",
      cap: 11,
    });
    expect(s.id).toBe("abc");
    expect(calls).toHaveLength(1);
    expect(calls[0].url).toBe("http://x/sessions");
    expect(calls[0].init?.method).toBe("POST");
    expect(JSON.parse(String(calls[0].init?.body))).toMatchObject({
      red_target: "C4",
      human_role: "painter",
      cap: 11,
    });
  });

  it("sends painter and builder moves with the right bodies", async () => {
    const { fn, calls } = fakeFetch(200, { id: "abc" });
    const api = new ApiClient("", fn);
    await api.paint("abc", "B");
    await api.build("abc", 0, null);
    expect(calls[0].url).toBe("/sessions/abc/moves");
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({ color: "B" });
    expect(JSON.parse(String(calls[1].init?.body))).toEqual({ u: 0, v: null });
  });

  it("turns error bodies into typed ApiError values", async () => {
    const { fn } = fakeFetch(400, { code: "IllegalMove", message: "edge (0, 1) already played" });
    const api = new ApiClient("", fn);
    const err = await api.paint("abc", "R").catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(400);
    expect(err.code).toBe("IllegalMove");
    expect(err.message).toContain("already played");
  });

  it("falls back to a plain HTTP error when the body is not JSON", async () => {
    const fn = async () => new Response("boom", { status: 502 });
    const api = new ApiClient("", fn);
    const err = await api.getSession("abc").catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.code).toBe("HttpError");
    expect(err.message).toBe("HTTP 502");
  });
});
