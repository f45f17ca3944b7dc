// The predictive editor's brain: a token list that can only ever grow by
// menu entries, so no interaction sequence produces an unparseable sentence.

import type { Menu, WikiApi } from "./api.js";

export type EditorMode = "sentence" | "comment";

export interface CompletionSource {
  complete(tokens: string[]): Promise<Menu>;
}

export class EditorState {
  tokens: string[] = [];
  menu: Menu = { groups: [] };

  constructor(private source: CompletionSource) {}

  async start(): Promise<void> {
    this.tokens = [];
    await this.refresh();
  }

  async refresh(): Promise<void> {
    this.menu = await this.source.complete(this.tokens);
  }

  menuTokens(): string[] {
    return this.menu.groups.flatMap((g) => g.tokens);
  }

  canAppend(token: string): boolean {
    return this.menu.groups.some((g) => g.tokens.includes(token));
  }

  async append(token: string): Promise<void> {
    if (!this.canAppend(token)) {
      throw new Error(`token ${token} is not offered by the menu`);
    }
    this.tokens.push(token);
    if (this.isComplete()) {
      this.menu = { groups: [] }; // a terminator has no continuations
    } else {
      await this.refresh();
    }
  }

  async backspace(): Promise<void> {
    if (this.tokens.length === 0) return;
    this.tokens.pop();
    await this.refresh();
  }

  isComplete(): boolean {
    const last = this.tokens[this.tokens.length - 1];
    return last === "." || last === "?";
  }

  isQuestion(): boolean {
    return this.tokens[this.tokens.length - 1] === "?";
  }

  // the a/every dialog appears exactly when a complete declarative
  // sentence starts with "a" or "an"
  needsEveryDialog(): boolean {
    return (
      this.isComplete() &&
      !this.isQuestion() &&
      (this.tokens[0] === "a" || this.tokens[0] === "an")
    );
  }

  everyRewrite(): string[] {
    return ["every", ...this.tokens.slice(1)];
  }

  text(): string {
    return renderTokens(this.tokens);
  }
}

export function renderTokens(tokens: string[]): string {
  let out = "";
  for (const token of tokens) {
    if (token === "." || token === "?") {
      out += token;
    } else {
      out += out ? ` ${token}` : token;
    }
  }
  return out.charAt(0).toUpperCase() + out.slice(1);
}

export async function submitSentence(
  api: WikiApi,
  pageId: string,
  state: EditorState,
  confirmEvery: (original: string, rewrite: string) => Promise<boolean>,
): Promise<{ text: string }> {
  let tokens = state.tokens;
  if (state.needsEveryDialog()) {
    const rewrite = state.everyRewrite();
    if (await confirmEvery(renderTokens(tokens), renderTokens(rewrite))) {
      tokens = rewrite;
    }
  }
  const text = renderTokens(tokens);
  const statement = await api.addStatement(pageId, text);
  return { text: statement.text };
}
