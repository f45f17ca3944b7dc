// DOM rendering for page views: statements in order, gray comments with
// links, red triangles on sentences outside OWL, answers under questions.

import type { PageView, StatementView } from "./api.js";

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

function renderCommentBody(view: StatementView, container: HTMLElement): void {
  // comments render in gray; [[...]] becomes a wiki link, URLs become anchors
  const pattern = /\[\[([^\]]+)\]\]|https?:\/\/\S+/g;
  let rest = view.text;
  let match: RegExpExecArray | null;
  while ((match = pattern.exec(view.text)) !== null) {
    const before = view.text.slice(view.text.length - rest.length, match.index);
    if (before) container.appendChild(document.createTextNode(before));
    if (match[1]) {
      const a = el("a", "internal-link", match[1].replace(/_/g, " "));
      a.setAttribute("href", `#/page/${match[1].replace(/ /g, "_")}`);
      container.appendChild(a);
    } else {
      const a = el("a", "external-link", match[0]);
      a.setAttribute("href", match[0]);
      a.setAttribute("target", "_blank");
      container.appendChild(a);
    }
    rest = view.text.slice(match.index + match[0].length);
  }
  if (rest) container.appendChild(document.createTextNode(rest));
}

export function renderStatement(
  view: StatementView,
  onDelete: (id: number) => void,
): HTMLElement {
  const row = el("div", `statement statement-${view.kind}`);
  if (view.kind === "comment") {
    const body = el("div", "comment-text");
    renderCommentBody(view, body);
    row.appendChild(body);
  } else {
    const line = el("div", "statement-line");
    if (view.state === "non_owl") {
      const marker = el("span", "red-triangle", "▲");
      marker.title = `outside OWL: ${view.reason ?? ""} (not used for reasoning)`;
      line.appendChild(marker);
    }
    if (view.state === "conflicting") {
      const marker = el("span", "conflict-mark", "✗");
      marker.title = "conflicts with the current ontology (not used for reasoning)";
      line.appendChild(marker);
    }
    line.appendChild(el("span", "statement-text", view.text));
    row.appendChild(line);
    if (view.answers !== null) {
      const answers = el("div", "answers");
      if (view.answers.length === 0) {
        answers.appendChild(el("span", "answer-empty", "(no results)"));
      }
      for (const answer of view.answers) {
        answers.appendChild(el("span", "answer", answer));
      }
      row.appendChild(answers);
    }
  }
  const remove = el("button", "delete-button", "×");
  remove.title = "remove this statement";
  remove.addEventListener("click", () => onDelete(view.id));
  row.appendChild(remove);
  return row;
}

export function renderPage(
  view: PageView,
  onDelete: (id: number) => void,
): HTMLElement {
  const container = el("section", "page");
  container.appendChild(el("h2", "page-title", view.title.replace(/_/g, " ")));
  const list = el("div", "statements");
  for (const statement of view.statements) {
    list.appendChild(renderStatement(statement, onDelete));
  }
  container.appendChild(list);
  return container;
}

export function renderHierarchy(sentences: string[]): HTMLElement {
  const container = el("div", "hierarchy");
  if (sentences.length === 0) return container;
  container.appendChild(el("h3", undefined, "Inferred hierarchy"));
  for (const sentence of sentences) {
    container.appendChild(el("div", "hierarchy-sentence", sentence));
  }
  return container;
}
