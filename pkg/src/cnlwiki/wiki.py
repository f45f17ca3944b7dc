"""The wiki data model: pages, statements, the consistency gate, persistence.

A Kb value is an immutable snapshot of the whole wiki. Every mutation
returns a new Kb; the consistency gate guarantees that the reasoned
ontology (the axioms of all integrated sentences) always stays consistent:
a new sentence whose axioms would introduce a contradiction is kept but
flagged as conflicting and its axioms never enter the snapshot.

Persistence is a directory of line-oriented UTF-8 files, one per page plus
the lexicon; sentences are stored as their controlled text and all logic is
recomputed on load (the text is the source of truth).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, Optional, Tuple

from . import dl, lexicon as lx
from .errors import (
    ConflictError,
    CorruptFileError,
    InUseError,
    NotFoundError,
    UnknownWordError,
)
from .grammar import DEFAULT_MAX_NUMBER, Grammar, Token, render_tokens, tokenize
from .lexicon import Lexicon, WordCategory, article_for, validate_word_form
from .reasoner import check_consistency, classify, realize, retrieve
from .semantics import (
    IndividualQuery,
    OutsideOwl,
    Query,
    build_drs,
    map_to_owl,
    translate_question,
)

FILE_HEADER = "ACWKB 1"

INTEGRATED = "integrated"
NON_OWL = "non_owl"
CONFLICTING = "conflicting"


@dataclass(frozen=True)
class Statement:
    id: int
    page_id: str
    kind: str  # sentence | question | comment
    text: str  # display text (raw text for comments)
    tokens: Tuple[Token, ...] = ()
    state: Optional[str] = None  # sentences only
    reason: Optional[str] = None  # non-OWL reason
    axioms: Tuple[dl.Axiom, ...] = ()
    query: Optional[Query] = None


@dataclass(frozen=True)
class WikiPage:
    id: str
    title: str
    statement_ids: Tuple[int, ...] = ()


@dataclass(frozen=True)
class Kb:
    lexicon: Lexicon
    grammar: Grammar
    pages: Dict[str, WikiPage]
    statements: Dict[int, Statement]
    snapshot: dl.KbSnapshot
    next_statement_id: int = 1
    max_number: int = DEFAULT_MAX_NUMBER

    def page(self, page_id: str) -> WikiPage:
        try:
            return self.pages[page_id]
        except KeyError:
            raise NotFoundError(f"no page {page_id!r}") from None

    def statement(self, statement_id: int) -> Statement:
        try:
            return self.statements[statement_id]
        except KeyError:
            raise NotFoundError(f"no statement {statement_id}") from None


def _signature(lexicon: Lexicon):
    classes, roles, individuals = set(), set(), set()
    for e in lexicon.entries.values():
        if e.category is WordCategory.NOUN:
            classes.add(e.id)
        elif e.category is WordCategory.PROPER_NAME:
            individuals.add(e.id)
        else:
            roles.add(e.id)
    return classes, roles, individuals


def _make_snapshot(lexicon: Lexicon, statements) -> dl.KbSnapshot:
    classes, roles, individuals = _signature(lexicon)
    axioms = []
    for sid in sorted(statements):
        st = statements[sid]
        if st.kind == "sentence" and st.state == INTEGRATED:
            axioms.extend(st.axioms)
    return dl.KbSnapshot.from_axioms(
        axioms, classes=classes, roles=roles, individuals=individuals
    )


def new_kb(max_number: int = DEFAULT_MAX_NUMBER) -> Kb:
    lex = lx.empty_lexicon()
    return Kb(
        lexicon=lex,
        grammar=Grammar(lex, max_number),
        pages={},
        statements={},
        snapshot=_make_snapshot(lex, {}),
        max_number=max_number,
    )


def _with_lexicon(kb: Kb, lex: Lexicon, pages=None) -> Kb:
    return replace(
        kb,
        lexicon=lex,
        grammar=Grammar(lex, kb.max_number),
        pages=dict(kb.pages if pages is None else pages),
        snapshot=_make_snapshot(lex, kb.statements),
    )


def add_word(kb: Kb, category: WordCategory, forms) -> Tuple[Kb, lx.LexEntry]:
    lex, entry = lx.add_entry(kb.lexicon, category, forms)
    pages = dict(kb.pages)
    if entry.id in pages:
        raise ConflictError(entry.id, "a page with this name already exists")
    pages[entry.id] = WikiPage(id=entry.id, title=entry.id)
    return _with_lexicon(kb, lex, pages), entry


def set_abbreviation(kb: Kb, entry_id: str, abbrev: str) -> Kb:
    lex = lx.set_abbreviation(kb.lexicon, entry_id, abbrev)
    return _with_lexicon(kb, lex)


def remove_word(kb: Kb, entry_id: str) -> Kb:
    entry = kb.lexicon.entry(entry_id)
    usage = [
        (st.id, tuple(t.surface for t in st.tokens))
        for st in kb.statements.values()
        if st.kind in ("sentence", "question")
    ]
    blocking = set()
    forms = set(entry.forms.values())
    for sid, surfaces in usage:
        if forms & set(surfaces):
            blocking.add(sid)
    page = kb.pages.get(entry_id)
    if page is not None:
        blocking.update(page.statement_ids)
    if blocking:
        raise InUseError(blocking)
    lex = lx.remove_entry(kb.lexicon, entry_id)
    pages = dict(kb.pages)
    pages.pop(entry_id, None)
    return _with_lexicon(kb, lex, pages)


def create_page(kb: Kb, title: str) -> Tuple[Kb, WikiPage]:
    page_id = validate_word_form(title)
    if page_id in kb.pages:
        raise ConflictError(page_id, "page already exists")
    pages = dict(kb.pages)
    page = WikiPage(id=page_id, title=title)
    pages[page_id] = page
    return replace(kb, pages=pages), page


# -- statements -----------------------------------------------------------------

_LINK_RE = re.compile(r"\[\[([^\]]+)\]\]|(?P<url>https?://\S+)")


def comment_links(text: str):
    links = []
    for m in _LINK_RE.finditer(text):
        if m.group("url"):
            links.append(("external", m.group("url")))
        else:
            links.append(("internal", m.group(1)))
    return tuple(links)


def _classify_text(kb: Kb, text: str, kind: str):
    if kind == "comment":
        return "comment", None
    tokens = tokenize(text, kb.lexicon)
    if kind == "auto":
        if tokens and tokens[-1].kind == "term" and tokens[-1].surface == "?":
            kind = "question"
        else:
            kind = "sentence"
    return kind, tokens


def add_statement(
    kb: Kb, page_id: str, text: str, kind: str = "auto", statement_id: Optional[int] = None
) -> Tuple[Kb, Statement]:
    """Parse, translate, and gate one statement; returns the new wiki state.

    Sentences go through the incremental consistency gate: NonOwl sentences
    are stored but never reasoned with; sentences whose axioms would make
    the ontology inconsistent are stored as conflicting with their axioms
    left out.
    """
    page = kb.page(page_id)
    kind, tokens = _classify_text(kb, text, kind)
    sid = kb.next_statement_id if statement_id is None else statement_id

    if kind == "comment":
        st = Statement(id=sid, page_id=page_id, kind="comment", text=text)
    elif kind == "question":
        tree = kb.grammar.parse(tokens)
        if not tree.is_question:
            raise ConflictError(text, "not a question")
        query = translate_question(tree, kb.lexicon)
        st = Statement(
            id=sid,
            page_id=page_id,
            kind="question",
            text=render_tokens(tokens),
            tokens=tuple(tokens),
            query=query,
        )
    else:
        tree = kb.grammar.parse(tokens)
        if tree.is_question:
            raise ConflictError(text, "questions must be added as questions")
        drs = build_drs(tree, kb.lexicon)
        expressibility = map_to_owl(drs)
        if isinstance(expressibility, OutsideOwl):
            st = Statement(
                id=sid,
                page_id=page_id,
                kind="sentence",
                text=render_tokens(tokens),
                tokens=tuple(tokens),
                state=NON_OWL,
                reason=expressibility.reason,
            )
        else:
            axioms = expressibility.axioms
            tentative = kb.snapshot.with_axioms(axioms)
            if check_consistency(tentative):
                state = INTEGRATED
            else:
                state = CONFLICTING
            st = Statement(
                id=sid,
                page_id=page_id,
                kind="sentence",
                text=render_tokens(tokens),
                tokens=tuple(tokens),
                state=state,
                axioms=tuple(axioms),
            )

    statements = dict(kb.statements)
    statements[sid] = st
    pages = dict(kb.pages)
    pages[page_id] = replace(page, statement_ids=page.statement_ids + (sid,))
    kb2 = replace(
        kb,
        pages=pages,
        statements=statements,
        next_statement_id=max(kb.next_statement_id, sid + 1),
    )
    kb2 = replace(kb2, snapshot=_make_snapshot(kb2.lexicon, kb2.statements))
    return kb2, st


def remove_statement(kb: Kb, statement_id: int) -> Kb:
    """Drop a statement and retry conflicting sentences in id order."""
    st = kb.statement(statement_id)
    statements = dict(kb.statements)
    del statements[statement_id]
    pages = dict(kb.pages)
    page = pages[st.page_id]
    pages[st.page_id] = replace(
        page,
        statement_ids=tuple(i for i in page.statement_ids if i != statement_id),
    )
    kb2 = replace(kb, pages=pages, statements=statements)
    return _retry_conflicting(kb2)


def _retry_conflicting(kb: Kb) -> Kb:
    statements = dict(kb.statements)
    snapshot = _make_snapshot(kb.lexicon, statements)
    for sid in sorted(statements):
        st = statements[sid]
        if st.kind == "sentence" and st.state == CONFLICTING:
            tentative = snapshot.with_axioms(st.axioms)
            if check_consistency(tentative):
                statements[sid] = replace(st, state=INTEGRATED)
                snapshot = tentative
    return replace(kb, statements=statements, snapshot=snapshot)


# -- display ----------------------------------------------------------------------

@dataclass(frozen=True)
class StatementView:
    id: int
    kind: str
    text: str
    state: Optional[str]
    reason: Optional[str]
    answers: Optional[Tuple[str, ...]]
    links: Tuple[Tuple[str, str], ...] = ()


@dataclass(frozen=True)
class PageView:
    id: str
    title: str
    statements: Tuple[StatementView, ...]


def display_name(kb: Kb, entry_id: str) -> str:
    """Answer-list rendering: blanks for underscores, abbreviation appended."""
    entry = kb.lexicon.entries.get(entry_id)
    if entry is None:
        return entry_id.replace("_", " ")
    name = entry_id.replace("_", " ")
    abbrev = entry.forms.get("abbreviation")
    if abbrev:
        name += f" ({abbrev.replace('_', ' ')})"
    return name


def _answers(kb: Kb, query: Query) -> Tuple[str, ...]:
    if isinstance(query, IndividualQuery):
        names = realize(kb.snapshot, query.individual)
        return tuple(sorted(n.replace("_", " ") for n in names))
    found = retrieve(kb.snapshot, query.concept)
    return tuple(sorted(display_name(kb, i) for i in found))


def render_page(kb: Kb, page_id: str) -> PageView:
    """Display model: statements in order, question answers computed fresh."""
    page = kb.page(page_id)
    views = []
    for sid in page.statement_ids:
        st = kb.statements[sid]
        answers = None
        links = ()
        if st.kind == "question":
            answers = _answers(kb, st.query)
        elif st.kind == "comment":
            links = comment_links(st.text)
        views.append(
            StatementView(
                id=st.id,
                kind=st.kind,
                text=st.text,
                state=st.state,
                reason=st.reason,
                answers=answers,
                links=links,
            )
        )
    return PageView(id=page.id, title=page.title, statements=tuple(views))


def hierarchy_view(kb: Kb, noun_id: str):
    """Direct super- and subclasses of a noun, verbalized as sentences."""
    entry = kb.lexicon.entries.get(noun_id)
    if entry is None or entry.category is not WordCategory.NOUN:
        raise UnknownWordError(noun_id)
    hierarchy = classify(kb.snapshot)
    sentences = []

    def verbalize_pair(sub: str, sup: str) -> str:
        return f"Every {sub} is {article_for(sup)} {sup}."

    for other in sorted(hierarchy.equivalents.get(noun_id, ())):
        if other != noun_id:
            sentences.append(verbalize_pair(noun_id, other))
            sentences.append(verbalize_pair(other, noun_id))
    for sup in sorted(hierarchy.direct_supers.get(noun_id, ())):
        sentences.append(verbalize_pair(noun_id, sup))
    for sub in sorted(hierarchy.direct_subs.get(noun_id, ())):
        sentences.append(verbalize_pair(sub, noun_id))
    return sentences


# -- OWL export --------------------------------------------------------------------

def export_owl(kb: Kb) -> str:
    """Functional-syntax document with the integrated axioms."""
    lines = [
        "Prefix(:=<http://cnlwiki/ontology#>)",
        "Ontology(<http://cnlwiki/ontology>",
    ]
    classes, roles, individuals = _signature(kb.lexicon)
    for c in sorted(classes):
        lines.append(f"Declaration(Class(:{c}))")
    for r in sorted(roles):
        lines.append(f"Declaration(ObjectProperty(:{r}))")
    for i in sorted(individuals):
        lines.append(f"Declaration(Individual(:{i}))")
    omitted = []
    for sid in sorted(kb.statements):
        st = kb.statements[sid]
        if st.kind != "sentence":
            continue
        if st.state == INTEGRATED:
            for ax in st.axioms:
                lines.append(dl.render_axiom(ax))
        else:
            omitted.append(st)
    if omitted:
        lines.append("# omitted sentences (outside OWL or conflicting):")
        for st in omitted:
            lines.append(f"# [{st.state}] {st.text}")
    lines.append(")")
    return "\n".join(lines) + "\n"


# -- persistence --------------------------------------------------------------------

_CATEGORY_FORMS = {
    "proper_name": ("long", "abbreviation"),
    "noun": ("singular", "plural"),
    "transitive_verb": ("third_singular", "bare_infinitive", "past_participle"),
    "of_construct": ("noun_part",),
    "transitive_adjective": ("adjective",),
}


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def _unescape(text: str) -> str:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\\" and i + 1 < len(text):
            nxt = text[i + 1]
            out.append({"\\": "\\", "t": "\t", "n": "\n"}.get(nxt, nxt))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def save(kb: Kb, location) -> None:
    """Write the wiki as a directory; deterministic byte-for-byte."""
    root = Path(location)
    root.mkdir(parents=True, exist_ok=True)
    lex_lines = [FILE_HEADER]
    for entry in kb.lexicon.entries.values():
        fields = [entry.category.value]
        for role in _CATEGORY_FORMS[entry.category.value]:
            fields.append(entry.forms.get(role, "-"))
        lex_lines.append("\t".join(fields))
    (root / "lexicon.acw").write_text("\n".join(lex_lines) + "\n", encoding="utf-8")

    pages_dir = root / "pages"
    pages_dir.mkdir(exist_ok=True)
    for stale in pages_dir.glob("*.acw"):
        if stale.stem not in kb.pages:
            stale.unlink()
    for page in kb.pages.values():
        lines = [FILE_HEADER, f"PAGE\t{page.id}\t{_escape(page.title)}"]
        for sid in page.statement_ids:
            st = kb.statements[sid]
            if st.kind == "comment":
                payload = _escape(st.text)
            else:
                payload = " ".join(t.surface for t in st.tokens)
            state = st.state or "-"
            lines.append(f"{st.kind.upper()}\t{state}\t{st.id}\t{payload}")
        (pages_dir / f"{page.id}.acw").write_text(
            "\n".join(lines) + "\n", encoding="utf-8"
        )


def load(location, max_number: int = DEFAULT_MAX_NUMBER) -> Kb:
    """Rebuild a wiki from disk, recomputing all logic from the text."""
    root = Path(location)
    lex_path = root / "lexicon.acw"
    if not lex_path.is_file():
        raise CorruptFileError(lex_path, 0, "missing lexicon file")
    kb = new_kb(max_number)
    lex_lines = lex_path.read_text(encoding="utf-8").splitlines()
    if not lex_lines or lex_lines[0] != FILE_HEADER:
        raise CorruptFileError(lex_path, 1, "bad header")
    lex = kb.lexicon
    for lineno, line in enumerate(lex_lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split("\t")
        category_name = fields[0]
        if category_name not in _CATEGORY_FORMS:
            raise CorruptFileError(lex_path, lineno, f"unknown category {category_name!r}")
        roles = _CATEGORY_FORMS[category_name]
        if len(fields) != len(roles) + 1:
            raise CorruptFileError(lex_path, lineno, "wrong field count")
        forms = {
            role: value
            for role, value in zip(roles, fields[1:])
            if value and value != "-"
        }
        try:
            lex, _ = lx.add_entry(lex, WordCategory(category_name), forms)
        except Exception as exc:
            raise CorruptFileError(lex_path, lineno, str(exc)) from None
    kb = _with_lexicon(kb, lex, {})

    records = []
    pages_dir = root / "pages"
    page_files = sorted(pages_dir.glob("*.acw")) if pages_dir.is_dir() else []
    for path in page_files:
        lines = path.read_text(encoding="utf-8").splitlines()
        if not lines or lines[0] != FILE_HEADER:
            raise CorruptFileError(path, 1, "bad header")
        if len(lines) < 2 or not lines[1].startswith("PAGE\t"):
            raise CorruptFileError(path, 2, "missing PAGE record")
        page_fields = lines[1].split("\t")
        if len(page_fields) != 3:
            raise CorruptFileError(path, 2, "bad PAGE record")
        page_id, title = page_fields[1], _unescape(page_fields[2])
        if page_id != path.stem:
            raise CorruptFileError(path, 2, "page id does not match file name")
        pages = dict(kb.pages)
        if page_id in pages:
            raise CorruptFileError(path, 2, f"duplicate page {page_id!r}")
        pages[page_id] = WikiPage(id=page_id, title=title)
        kb = replace(kb, pages=pages)
        for lineno, line in enumerate(lines[2:], start=3):
            if not line.strip():
                continue
            fields = line.split("\t")
            if len(fields) != 4:
                raise CorruptFileError(path, lineno, "wrong field count")
            kind, _state, sid_text, payload = fields
            if kind not in ("SENTENCE", "QUESTION", "COMMENT"):
                raise CorruptFileError(path, lineno, f"unknown record {kind!r}")
            if not sid_text.isdigit():
                raise CorruptFileError(path, lineno, "bad statement id")
            records.append((int(sid_text), page_id, kind.lower(), payload, path, lineno))

    seen_ids = set()
    for sid, page_id, kind, payload, path, lineno in sorted(records):
        if sid in seen_ids:
            raise CorruptFileError(path, lineno, f"duplicate statement id {sid}")
        seen_ids.add(sid)
        text = _unescape(payload) if kind == "comment" else payload
        try:
            kb, _ = add_statement(kb, page_id, text, kind=kind, statement_id=sid)
        except CorruptFileError:
            raise
        except Exception as exc:
            raise CorruptFileError(path, lineno, str(exc)) from None
    return kb


# -- invariants (the `check` command) ------------------------------------------------

def verify_invariants(kb: Kb):
    """Re-verify the gate and index invariants; returns a list of problems."""
    problems = []
    expected = _make_snapshot(kb.lexicon, kb.statements)
    if set(expected.axioms) != set(kb.snapshot.axioms):
        problems.append("snapshot does not equal the union of integrated axioms")
    if not check_consistency(kb.snapshot):
        problems.append("snapshot is inconsistent")
    rebuilt = lx._reindex(kb.lexicon.entries)
    if rebuilt != dict(kb.lexicon.index):
        problems.append("lexicon index out of sync")
    for page in kb.pages.values():
        for sid in page.statement_ids:
            if sid not in kb.statements:
                problems.append(f"page {page.id} references missing statement {sid}")
    for st in kb.statements.values():
        if st.page_id not in kb.pages:
            problems.append(f"statement {st.id} references missing page {st.page_id}")
    return problems
