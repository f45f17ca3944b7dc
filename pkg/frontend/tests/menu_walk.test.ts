// Menu-only safety, end to end: a scripted session against the real engine.
// Fifty random menu walks are assembled token by token from the live
// lookahead menus and posted; none may come back as a parser rejection, and
// the a/every dialog condition must hold exactly for initial "a"/"an".

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { RequestFailed, WikiApi } from "../src/api.js";
import { EditorState } from "../src/editor.js";

const PORT = 18000 + Math.floor(Math.random() * 20000);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
let kbDir: string;
const api = new WikiApi(BASE);

// deterministic pseudo-random walk
let seed = 0xdecafbad;
function rand(): number {
  seed = (seed * 1664525 + 1013904223) >>> 0;
  return seed / 0x100000000;
}

async function waitForServer(): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt++) {
    try {
      await api.listPages();
      return;
    } catch {
      await new Promise((resolve) => setTimeout(resolve, 200));
    }
  }
  throw new Error("server did not come up");
}

beforeAll(async () => {
  kbDir = mkdtempSync(join(tmpdir(), "cnlwiki-ui-test-"));
  server = spawn(
    "python3",
    ["-m", "cnlwiki.cli", "--kb", kbDir, "serve", "--port", String(PORT)],
    { stdio: "ignore" },
  );
  await waitForServer();
  for (const [category, forms] of [
    ["noun", { singular: "country", plural: "countries" }],
    ["noun", { singular: "area", plural: "areas" }],
    ["noun", { singular: "city", plural: "cities" }],
    ["proper_name", { long: "Switzerland" }],
    ["proper_name", { long: "Germany" }],
    ["transitive_verb", {
      third_singular: "borders",
      bare_infinitive: "border",
      past_participle: "bordered",
    }],
    ["transitive_adjective", { adjective: "located_in" }],
  ] as const) {
    await api.addWord(category, forms);
  }
}, 60000);

afterAll(() => {
  server?.kill();
  if (kbDir) rmSync(kbDir, { recursive: true, force: true });
});

describe("menu-only editing against the live engine", () => {
  it("50 random menu walks produce no parser rejections", async () => {
    let submitted = 0;
    let dialogs = 0;
    while (submitted < 50) {
      const state = new EditorState(api);
      await state.start();
      for (let step = 0; step < 24 && !state.isComplete(); step++) {
        const tokens = state.menuTokens();
        expect(tokens.length).toBeGreaterThan(0);
        const terminator = tokens.find((t) => t === "." || t === "?");
        const pick =
          terminator && rand() < 0.55
            ? terminator
            : tokens[Math.floor(rand() * tokens.length)];
        await state.append(pick);
      }
      if (!state.isComplete()) continue; // wandered too deep; try again

      // the dialog must appear exactly when the sentence starts with a/an
      const expectDialog =
        !state.isQuestion() && (state.tokens[0] === "a" || state.tokens[0] === "an");
      expect(state.needsEveryDialog()).toBe(expectDialog);
      if (expectDialog) dialogs++;

      try {
        const statement = await api.addStatement("country", state.text());
        expect(["integrated", "non_owl", "conflicting", null]).toContain(
          statement.state,
        );
      } catch (error) {
        if (error instanceof RequestFailed) {
          const type = error.detail.type;
          expect(type, `parser rejected menu-built sentence: ${state.text()}`).not.toBe(
            "SentenceSyntax",
          );
          expect(type).not.toBe("UnknownToken");
          // anaphora failures (e.g. a dangling "the city") are semantic
          // errors, not parser rejections; they still count as a walk
          expect(["UnresolvedAnaphor", "InaccessibleAntecedent"]).toContain(type);
        } else {
          throw error;
        }
      }
      submitted++;
    }
    expect(submitted).toBe(50);
  }, 240000);

  it("menus mirror the engine after a word is added mid-session", async () => {
    const before = await api.complete(["a"]);
    const beforeTokens = before.groups.flatMap((g) => g.tokens);
    expect(beforeTokens).not.toContain("mountain");
    await api.addWord("noun", { singular: "mountain", plural: "mountains" });
    const after = await api.complete(["a"]);
    const afterTokens = after.groups.flatMap((g) => g.tokens);
    expect(afterTokens).toContain("mountain");
  });

  it("page views reflect mutations immediately", async () => {
    const statement = await api.addStatement("city", "Every city is an area.");
    const view = await api.getPage("city");
    expect(view.statements.map((s) => s.id)).toContain(statement.id);
    await api.deleteStatement(statement.id);
    const after = await api.getPage("city");
    expect(after.statements.map((s) => s.id)).not.toContain(statement.id);
  });
});
