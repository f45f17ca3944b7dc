// Single-page wiki frontend: page list, article view with live answers,
// the predictive sentence editor, and the lexical editor.

import { RequestFailed, WikiApi } from "./api.js";
import { EditorState, renderTokens, submitSentence } from "./editor.js";
import { renderHierarchy, renderPage } from "./views.js";
import { CATEGORIES, categoryById } from "./words.js";

const api = new WikiApi();
const root = document.getElementById("app")!;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function navigate(hash: string): void {
  window.location.hash = hash;
}

function flash(message: string, kind: "info" | "error" = "info"): void {
  const banner = el("div", `flash flash-${kind}`, message);
  document.body.appendChild(banner);
  setTimeout(() => banner.remove(), 4000);
}

async function showPageList(): Promise<void> {
  const { pages } = await api.listPages();
  root.replaceChildren();
  const header = el("div", "toolbar");
  const newPage = el("button", undefined, "New article");
  newPage.addEventListener("click", async () => {
    const title = window.prompt("Article title:");
    if (!title) return;
    try {
      const page = await api.createPage(title);
      navigate(`#/page/${page.id}`);
    } catch (error) {
      flash(describe(error), "error");
    }
  });
  const newWord = el("button", undefined, "New word");
  newWord.addEventListener("click", () => navigate("#/words"));
  const exportLink = el("a", "export-link", "Export OWL");
  exportLink.setAttribute("href", "/api/export.owl");
  header.append(newPage, newWord, exportLink);
  root.appendChild(header);

  const list = el("ul", "page-list");
  for (const page of pages) {
    const item = el("li");
    const link = el("a", undefined, page.title.replace(/_/g, " "));
    link.setAttribute("href", `#/page/${page.id}`);
    const detail = page.category ? ` (${page.category.replace(/_/g, " ")})` : "";
    item.appendChild(link);
    item.appendChild(el("span", "page-meta", `${detail} · ${page.statements} statements`));
    list.appendChild(item);
  }
  root.appendChild(list);
}

function describe(error: unknown): string {
  if (error instanceof RequestFailed) {
    return `${error.detail.type}: ${error.detail.message}`;
  }
  return String(error);
}

async function showPage(pageId: string): Promise<void> {
  let view;
  try {
    view = await api.getPage(pageId);
  } catch (error) {
    root.replaceChildren(el("p", "flash-error", describe(error)));
    return;
  }
  root.replaceChildren();
  const back = el("a", "back-link", "← all pages");
  back.setAttribute("href", "#/");
  root.appendChild(back);

  root.appendChild(
    renderPage(view, async (statementId) => {
      await api.deleteStatement(statementId);
      await showPage(pageId);
    }),
  );

  try {
    const { sentences } = await api.hierarchy(pageId);
    root.appendChild(renderHierarchy(sentences));
  } catch {
    // not a noun page: no hierarchy section
  }

  root.appendChild(buildEditor(pageId));
}

function buildEditor(pageId: string): HTMLElement {
  const container = el("section", "editor");
  container.appendChild(el("h3", undefined, "Add a sentence or question"));
  const tokensView = el("div", "editor-tokens");
  const menuView = el("div", "editor-menu");
  const controls = el("div", "editor-controls");
  const state = new EditorState(api);

  const backspace = el("button", undefined, "⌫ remove token");
  const submit = el("button", "submit-button", "Add");
  submit.disabled = true;

  async function redraw(): Promise<void> {
    tokensView.textContent = state.tokens.length ? state.text() : "(empty)";
    submit.disabled = !state.isComplete();
    menuView.replaceChildren();
    if (state.isComplete()) return;
    for (const group of state.menu.groups) {
      const block = el("div", "menu-group");
      block.appendChild(el("div", "menu-label", group.category));
      const body = el("div", "menu-tokens");
      for (const token of group.tokens) {
        const chip = el("button", "menu-token", token);
        chip.addEventListener("click", async () => {
          await state.append(token);
          await redraw();
        });
        body.appendChild(chip);
      }
      block.appendChild(body);
      menuView.appendChild(block);
    }
  }

  backspace.addEventListener("click", async () => {
    await state.backspace();
    await redraw();
  });

  submit.addEventListener("click", async () => {
    try {
      await submitSentence(api, pageId, state, async (original, rewrite) =>
        window.confirm(
          `You wrote:\n  ${original}\n\nDid you mean:\n  ${rewrite}\n\n` +
            "OK replaces the initial article with 'every'; Cancel keeps your sentence.",
        ),
      );
      await state.start();
      await showPage(pageId);
    } catch (error) {
      flash(describe(error), "error");
    }
  });

  const commentButton = el("button", undefined, "Add comment instead");
  commentButton.addEventListener("click", async () => {
    const text = window.prompt("Comment (free text, [[Page]] links allowed):");
    if (!text) return;
    try {
      await api.addStatement(pageId, text, "comment");
      await showPage(pageId);
    } catch (error) {
      flash(describe(error), "error");
    }
  });

  controls.append(backspace, submit, commentButton);
  container.append(tokensView, menuView, controls);
  void state.start().then(redraw);
  return container;
}

function showWordEditor(): void {
  root.replaceChildren();
  const back = el("a", "back-link", "← all pages");
  back.setAttribute("href", "#/");
  root.appendChild(back);
  root.appendChild(el("h2", undefined, "New word"));
  root.appendChild(
    el("p", "hint", "Choose the category that matches how the word will be used."),
  );

  const chooser = el("div", "category-chooser");
  const formArea = el("div", "word-form");
  for (const category of CATEGORIES) {
    const card = el("button", "category-card");
    card.appendChild(el("div", "category-icon", category.icon));
    card.appendChild(el("div", "category-title", category.title));
    card.appendChild(el("div", "category-explanation", category.explanation));
    card.addEventListener("click", () => buildWordForm(category.id, formArea));
    chooser.appendChild(card);
  }
  root.append(chooser, formArea);
}

function buildWordForm(categoryId: string, formArea: HTMLElement): void {
  const category = categoryById(categoryId);
  formArea.replaceChildren();
  formArea.appendChild(el("h3", undefined, category.title));
  const inputs = new Map<string, HTMLInputElement>();
  for (const field of category.fields) {
    const row = el("label", "form-row");
    row.appendChild(el("span", undefined, field.label));
    const input = el("input");
    input.placeholder = field.example;
    inputs.set(field.role, input);
    row.appendChild(input);
    formArea.appendChild(row);
  }
  const error = el("div", "form-error");
  const save = el("button", "submit-button", "Create word");
  save.addEventListener("click", async () => {
    const forms: Record<string, string> = {};
    for (const [role, input] of inputs) {
      if (input.value.trim()) forms[role] = input.value.trim();
    }
    try {
      await api.addWord(category.id, forms);
      flash("word created");
      navigate("#/");
    } catch (err) {
      error.textContent = describe(err);
    }
  });
  formArea.append(error, save);
}

async function route(): Promise<void> {
  const hash = window.location.hash || "#/";
  if (hash.startsWith("#/page/")) {
    await showPage(decodeURIComponent(hash.slice("#/page/".length)));
  } else if (hash === "#/words") {
    showWordEditor();
  } else {
    await showPageList();
  }
}

window.addEventListener("hashchange", () => void route());
void route();
