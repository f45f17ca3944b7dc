"""JSON-over-HTTP service around one persistent wiki.

Every response body is a direct serialization of the corresponding engine
operation's result. Mutating requests are serialized through a single lock
and persisted before the response is sent; reads work on the current
immutable Kb value and never block the writer.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from . import stats as stats_mod
from . import wiki
from .errors import (
    NotFoundError,
    SentenceSyntaxError,
    UnknownTokenError,
    WikiError,
)
from .grammar import tokenize
from .lexicon import WordCategory


def _statement_json(view: wiki.StatementView):
    return {
        "id": view.id,
        "kind": view.kind,
        "text": view.text,
        "state": view.state,
        "reason": view.reason,
        "answers": list(view.answers) if view.answers is not None else None,
        "links": [{"kind": k, "target": t} for k, t in view.links],
    }


def _page_json(view: wiki.PageView):
    return {
        "id": view.id,
        "title": view.title,
        "statements": [_statement_json(s) for s in view.statements],
    }


def _menu_json(menu):
    return {
        "groups": [
            {"category": label, "tokens": list(tokens)} for label, tokens in menu.groups
        ]
    }


def _error_payload(exc: WikiError):
    payload = {"type": type(exc).__name__.removesuffix("Error"), "message": str(exc)}
    if isinstance(exc, SentenceSyntaxError):
        payload["position"] = exc.position
        payload["expected"] = _menu_json(exc.expected)
    if isinstance(exc, UnknownTokenError):
        payload["position"] = exc.position
        payload["surface"] = exc.surface
    return {"error": payload}


class WikiService:
    """Shared state: the current Kb snapshot plus the single-writer lock."""

    def __init__(self, kb_dir, max_number=None):
        self.kb_dir = Path(kb_dir)
        if (self.kb_dir / "lexicon.acw").is_file():
            kwargs = {} if max_number is None else {"max_number": max_number}
            self.kb = wiki.load(self.kb_dir, **kwargs)
        else:
            self.kb = wiki.new_kb(**({} if max_number is None else {"max_number": max_number}))
            wiki.save(self.kb, self.kb_dir)
        self.lock = threading.Lock()

    def mutate(self, fn):
        with self.lock:
            result = fn(self.kb)
            new_kb = result[0] if isinstance(result, tuple) else result
            wiki.save(new_kb, self.kb_dir)
            self.kb = new_kb
            return result


def create_app(kb_dir, max_number=None, ui_dir=None) -> FastAPI:
    service = WikiService(kb_dir, max_number)
    app = FastAPI(title="cnlwiki")
    app.state.service = service

    @app.exception_handler(WikiError)
    async def wiki_error_handler(request: Request, exc: WikiError):
        status = 404 if isinstance(exc, NotFoundError) else 400
        return JSONResponse(status_code=status, content=_error_payload(exc))

    @app.get("/api/pages")
    def list_pages():
        kb = service.kb
        return {
            "pages": [
                {
                    "id": p.id,
                    "title": p.title,
                    "statements": len(p.statement_ids),
                    "category": (
                        kb.lexicon.entries[p.id].category.value
                        if p.id in kb.lexicon.entries
                        else None
                    ),
                }
                for p in kb.pages.values()
            ]
        }

    @app.post("/api/pages")
    async def make_page(request: Request):
        body = await request.json()
        _, page = service.mutate(lambda kb: wiki.create_page(kb, body["title"]))
        return {"id": page.id, "title": page.title}

    @app.get("/api/pages/{page_id}")
    def get_page(page_id: str):
        return _page_json(wiki.render_page(service.kb, page_id))

    @app.post("/api/pages/{page_id}/statements")
    async def post_statement(page_id: str, request: Request):
        body = await request.json()
        kind = body.get("kind", "auto")
        _, st = service.mutate(
            lambda kb: wiki.add_statement(kb, page_id, body["text"], kind=kind)
        )
        view = next(
            s for s in wiki.render_page(service.kb, page_id).statements if s.id == st.id
        )
        return {"statement": _statement_json(view)}

    @app.delete("/api/statements/{statement_id}")
    def delete_statement(statement_id: int):
        service.mutate(lambda kb: wiki.remove_statement(kb, statement_id))
        return {"ok": True}

    @app.get("/api/complete")
    def complete(tokens: str = ""):
        kb = service.kb
        parts = [t for t in tokens.split(",") if t]
        prefix = tokenize(" ".join(parts), kb.lexicon) if parts else []
        menu = kb.grammar.next_tokens(prefix)
        return _menu_json(menu)

    @app.post("/api/words")
    async def post_word(request: Request):
        body = await request.json()
        category = WordCategory(body["category"])
        _, entry = service.mutate(lambda kb: wiki.add_word(kb, category, body["forms"]))
        return {
            "word": {
                "id": entry.id,
                "category": entry.category.value,
                "forms": dict(entry.forms),
            }
        }

    @app.get("/api/hierarchy/{noun}")
    def hierarchy(noun: str):
        return {"sentences": wiki.hierarchy_view(service.kb, noun)}

    @app.get("/api/stats")
    def get_stats():
        return stats_mod.analyze_corpus(service.kb).as_dict()

    @app.get("/api/export.owl")
    def export():
        return PlainTextResponse(wiki.export_owl(service.kb))

    ui_path = Path(ui_dir) if ui_dir else Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if ui_path.is_dir():
        app.mount("/", StaticFiles(directory=ui_path, html=True), name="ui")
    return app
