import { describe, expect, it } from "vitest";

import type { SessionState } from "../src/types.js";
import { bannerText, forcesLine, roundLine, turnLine } from "../src/view.js";

function state(overrides: Partial<SessionState>): SessionState {
  return {
    id: "t",
    status: "awaiting_human",
    human_role: "painter",
    policy: "book_then_solver",
    cap: 11,
    red_target: "C4",
    blue_target: "P6",
    rounds_played: 0,
    winner: null,
    board: { n: 0, names: [], edges: [] },
    pending_edge: null,
    pending_forces: null,
    winning_copy: null,
    transcript: [],
    ...overrides,
  };
}

describe("roundLine", () => {
  it("counts the upcoming round against the cap", () => {
    expect(roundLine(state({}))).toBe("round 1 of ≤ 11");
    expect(roundLine(state({ rounds_played: 4 }))).toBe("round 5 of ≤ 11");
  });

  it("reports the final round once finished", () => {
    expect(roundLine(state({ status: "finished", rounds_played: 5 }))).toBe(
      "finished after round 5",
    );
  });
});

describe("bannerText", () => {
  it("is absent while the game runs", () => {
    expect(bannerText(state({}))).toBeNull();
  });

  it("shows the builder bound and the completed copy", () => {
    const s = state({
      status: "finished",
      winner: "builder",
      rounds_played: 11,
      winning_copy: { color: "R", target: "C4", vertices: [0, 1, 2, 3], edges: [] },
    });
    const text = bannerText(s)!;
    expect(text).toContain("Builder wins in ≤ 11");
    expect(text).toContain("red C4");
    expect(text).toContain("round 11");
  });

  it("credits the painter when the cap runs out", () => {
    const s = state({ status: "finished", winner: "painter", rounds_played: 5, cap: 5 });
    expect(bannerText(s)).toContain("Painter survives 5 rounds");
  });
});

describe("turnLine", () => {
  it("prompts the painter when an edge is offered", () => {
    expect(turnLine(state({ pending_edge: { u: 0, v: 1 } }))).toContain("color the offered edge");
  });

  it("prompts the builder when no edge is pending", () => {
    expect(turnLine(state({ human_role: "builder" }))).toContain("pick an edge");
  });
});

describe("forcesLine", () => {
  it("explains each forcing flag", () => {
    const forced = (f: Partial<NonNullable<SessionState["pending_forces"]>>) =>
      forcesLine(
        state({
          pending_edge: { u: 0, v: 1 },
          pending_forces: {
            forces_red: false,
            forces_blue: false,
            double_forced: false,
            ...f,
          },
        }),
      );
    expect(forced({})).toBeNull();
    expect(forced({ forces_red: true })).toContain("forces red");
    expect(forced({ forces_blue: true })).toContain("forces blue");
    expect(forced({ double_forced: true })).toContain("double-forced");
  });
});
