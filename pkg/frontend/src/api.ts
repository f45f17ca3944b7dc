// Typed client for the wiki's JSON API. The UI talks to the engine through
// these endpoints only.

export interface MenuGroup {
  category: string;
  tokens: string[];
}

export interface Menu {
  groups: MenuGroup[];
}

export interface Link {
  kind: "internal" | "external";
  target: string;
}

export interface StatementView {
  id: number;
  kind: "sentence" | "question" | "comment";
  text: string;
  state: "integrated" | "non_owl" | "conflicting" | null;
  reason: string | null;
  answers: string[] | null;
  links: Link[];
}

export interface PageView {
  id: string;
  title: string;
  statements: StatementView[];
}

export interface PageSummary {
  id: string;
  title: string;
  statements: number;
  category: string | null;
}

export interface WordForms {
  [role: string]: string;
}

export interface ApiError {
  type: string;
  message: string;
  position?: number;
  expected?: Menu;
}

export class RequestFailed extends Error {
  constructor(public status: number, public detail: ApiError) {
    super(detail.message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  const body = response.headers.get("content-type")?.includes("json")
    ? await response.json()
    : await response.text();
  if (!response.ok) {
    const detail: ApiError =
      typeof body === "object" && body.error
        ? body.error
        : { type: "Http", message: String(body) };
    throw new RequestFailed(response.status, detail);
  }
  return body as T;
}

function post(body: unknown): RequestInit {
  return {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  };
}

export class WikiApi {
  constructor(private base: string = "") {}

  listPages(): Promise<{ pages: PageSummary[] }> {
    return request(`${this.base}/api/pages`);
  }

  createPage(title: string): Promise<{ id: string; title: string }> {
    return request(`${this.base}/api/pages`, post({ title }));
  }

  getPage(id: string): Promise<PageView> {
    return request(`${this.base}/api/pages/${encodeURIComponent(id)}`);
  }

  complete(tokens: string[]): Promise<Menu> {
    const joined = encodeURIComponent(tokens.join(","));
    return request(`${this.base}/api/complete?tokens=${joined}`);
  }

  async addStatement(
    pageId: string,
    text: string,
    kind?: "sentence" | "question" | "comment",
  ): Promise<StatementView> {
    const body: { text: string; kind?: string } = { text };
    if (kind) body.kind = kind;
    const result = await request<{ statement: StatementView }>(
      `${this.base}/api/pages/${encodeURIComponent(pageId)}/statements`,
      post(body),
    );
    return result.statement;
  }

  deleteStatement(id: number): Promise<{ ok: boolean }> {
    return request(`${this.base}/api/statements/${id}`, { method: "DELETE" });
  }

  addWord(category: string, forms: WordForms): Promise<unknown> {
    return request(`${this.base}/api/words`, post({ category, forms }));
  }

  hierarchy(noun: string): Promise<{ sentences: string[] }> {
    return request(`${this.base}/api/hierarchy/${encodeURIComponent(noun)}`);
  }

  exportOwl(): Promise<string> {
    return request(`${this.base}/api/export.owl`);
  }
}
