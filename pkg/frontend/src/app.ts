import { ApiClient, ApiError } from "./api.js";
import { renderBoard } from "./board.js";
import type { Hint, HumanRole, Policy, SessionState } from "./types.js";
import { bannerText, forcesLine, roundLine, turnLine } from "./view.js";

// DOM controller. The board and all text lines re-render from the server's
// authoritative state after every request; nothing is predicted locally.

export class App {
  private state: SessionState | null = null;
  private hints: Hint[] | null = null;
  private showHints = false;
  private selected: Array<number | "fresh"> = [];
  private busy = false;
  private error: string | null = null;

  constructor(private root: HTMLElement, private api: ApiClient) {
    this.render();
  }

  private async call<T>(p: Promise<T>): Promise<T | null> {
    this.busy = true;
    this.render();
    try {
      return await p;
    } catch (e) {
      this.error = e instanceof ApiError ? `${e.code}: ${e.message}` : String(e);
      return null;
    } finally {
      this.busy = false;
    }
  }

  private async refreshHints(): Promise<void> {
    if (!this.state || !this.showHints || this.state.status === "finished") {
      this.hints = null;
      return;
    }
    const res = await this.call(this.api.getHints(this.state.id));
    this.hints = res ? res.hints : null;
  }

  async newGame(red: string, blue: string, role: HumanRole, cap: number, policy: Policy) {
    const res = await this.call(
      this.api.createSession({
        red_target: red,
        blue_target: blue,
        human_role: role,
        cap,
        policy,
      }),
    );
    if (res) {
      this.state = res;
      this.hints = null;
      this.selected = [];
      await this.refreshHints();
    }
    this.render();
  }

  async paint(color: "R" | "B") {
    if (!this.state || this.busy) return;
    const res = await this.call(this.api.paint(this.state.id, color));
    if (res) this.state = res;
    await this.refreshHints();
    this.render();
  }

  async playSelected() {
    if (!this.state || this.busy || this.selected.length !== 2) return;
    const [a, b] = this.selected;
    const res = await this.call(
      this.api.build(this.state.id, a === "fresh" ? null : a, b === "fresh" ? null : b),
    );
    if (res) {
      this.state = res;
      this.selected = [];
    }
    await this.refreshHints();
    this.render();
  }

  toggleVertex(v: number | "fresh") {
    const at = this.selected.indexOf(v);
    // "fresh" may appear twice (an edge between two brand-new vertices)
    if (at >= 0 && v !== "fresh") this.selected.splice(at, 1);
    else if (this.selected.length < 2) this.selected.push(v);
    else this.selected = [v];
    this.render();
  }

  async toggleHints() {
    this.showHints = !this.showHints;
    await this.refreshHints();
    this.render();
  }

  dismissError() {
    this.error = null;
    this.render();
  }

  // -- rendering --------------------------------------------------------

  render(): void {
    const s = this.state;
    const html: string[] = [];
    html.push(`<h1>Online Ramsey game</h1>`);
    if (this.error) {
      html.push(
        `<div class="banner error">${escapeHtml(this.error)} ` +
          `<button data-act="dismiss">dismiss</button></div>`,
      );
    }
    html.push(this.formHtml());
    if (s) {
      const banner = bannerText(s);
      if (banner) html.push(`<div class="banner result">${escapeHtml(banner)}</div>`);
      html.push(
        `<div class="status">` +
          `<span class="round">${escapeHtml(roundLine(s))}</span> ` +
          `<span class="turn">${escapeHtml(turnLine(s))}</span>` +
          `</div>`,
      );
      const forces = forcesLine(s);
      if (forces) html.push(`<div class="forces">${escapeHtml(forces)}</div>`);
      html.push(
        `<div class="board-wrap">` +
          renderBoard(s, {
            selected: this.selected,
            hints: this.showHints ? this.hints : null,
            clickableVertices: this.isBuilderTurn(),
          }) +
          `</div>`,
      );
      html.push(this.controlsHtml(s));
    }
    this.root.innerHTML = html.join("");
    this.wire();
  }

  private isBuilderTurn(): boolean {
    const s = this.state;
    return !!s && s.status === "awaiting_human" && s.human_role === "builder" && !this.busy;
  }

  private formHtml(): string {
    return (
      `<form class="new-game">` +
      `<label>red <input name="red" value="C4" size="4"></label>` +
      `<label>blue <input name="blue" value="P6" size="4"></label>` +
      `<label>play as <select name="role">` +
      `<option value="painter">painter</option>` +
      `<option value="builder">builder</option>` +
      `</select></label>` +
      `<label>cap <input name="cap" type="number" value="11" min="1" size="3"></label>` +
      `<label>engine <select name="policy">` +
      `<option value="book_then_solver">book, then solver</option>` +
      `<option value="solver_only">solver only</option>` +
      `</select></label>` +
      `<button data-act="start">new game</button>` +
      `</form>`
    );
  }

  private controlsHtml(s: SessionState): string {
    const parts: string[] = [`<div class="controls">`];
    const disabled = this.busy || s.status === "finished" ? " disabled" : "";
    if (s.human_role === "painter") {
      parts.push(`<button class="color red" data-act="paint-R"${disabled}>red</button>`);
      parts.push(`<button class="color blue" data-act="paint-B"${disabled}>blue</button>`);
    } else {
      const sel = this.selected
        .map((v) => (v === "fresh" ? "new" : s.board.names[v] ?? `#${v}`))
        .join(" – ");
      parts.push(`<span class="selection">edge: ${escapeHtml(sel || "pick two vertices")}</span>`);
      parts.push(`<button data-act="fresh"${disabled}>new vertex</button>`);
      const ready = this.selected.length === 2 && !this.busy && s.status !== "finished";
      parts.push(`<button data-act="play"${ready ? "" : " disabled"}>play edge</button>`);
    }
    parts.push(
      `<button data-act="hints"${disabled}>${this.showHints ? "hide" : "show"} hints</button>`,
    );
    parts.push(`</div>`);
    return parts.join("");
  }

  private wire(): void {
    const on = (selector: string, handler: (el: Element) => void) => {
      this.root.querySelectorAll(selector).forEach((el) => {
        el.addEventListener("click", (ev) => {
          ev.preventDefault();
          handler(el);
        });
      });
    };
    on(`[data-act="start"]`, () => {
      const form = this.root.querySelector("form.new-game") as HTMLFormElement;
      const data = new FormData(form);
      void this.newGame(
        String(data.get("red") || "C4"),
        String(data.get("blue") || "P6"),
        String(data.get("role")) as HumanRole,
        Number(data.get("cap") || 11),
        String(data.get("policy")) as Policy,
      );
    });
    on(`[data-act="dismiss"]`, () => this.dismissError());
    on(`[data-act="paint-R"]`, () => void this.paint("R"));
    on(`[data-act="paint-B"]`, () => void this.paint("B"));
    on(`[data-act="fresh"]`, () => this.toggleVertex("fresh"));
    on(`[data-act="play"]`, () => void this.playSelected());
    on(`[data-act="hints"]`, () => void this.toggleHints());
    if (this.isBuilderTurn()) {
      on(`.vertex.clickable`, (el) => {
        const v = Number((el as SVGGElement).dataset.v);
        this.toggleVertex(v);
      });
    }
  }
}

function escapeHtml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
