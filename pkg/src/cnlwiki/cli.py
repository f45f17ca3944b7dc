"""Command-line front door: serve the API, batch-import, export, inspect.

Exit codes: 0 on success, 1 for user errors (bad input, missing files,
unknown words), 2 for internal errors (violated invariants, bugs).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import stats as stats_mod
from . import wiki
from .errors import SentenceSyntaxError, UnknownTokenError, WikiError
from .grammar import tokenize
from .lexicon import FORM_ROLES, WordCategory

OK, USER_ERROR, INTERNAL_ERROR = 0, 1, 2


def _load_kb(kb_dir: Path):
    if not (kb_dir / "lexicon.acw").is_file():
        raise WikiError(f"no knowledge base at {kb_dir} (run 'serve' or 'add-word' to create one)")
    return wiki.load(kb_dir)


def _load_or_new(kb_dir: Path):
    if (kb_dir / "lexicon.acw").is_file():
        return wiki.load(kb_dir)
    return wiki.new_kb()


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    try:
        app = create_app(args.kb)
    except WikiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USER_ERROR
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    except OSError as exc:
        print(f"error: cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return USER_ERROR
    return OK


def cmd_import(args) -> int:
    path = Path(args.file)
    if not path.is_file():
        print(f"error: no such file {path}", file=sys.stderr)
        return USER_ERROR
    kb = _load_or_new(Path(args.kb))
    if args.page not in kb.pages:
        kb, _ = wiki.create_page(kb, args.page)
    failures = 0
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            kb, st = wiki.add_statement(kb, args.page, line)
            print(f"{lineno}: {st.state or st.kind}  {st.text}")
        except (SentenceSyntaxError, UnknownTokenError) as exc:
            failures += 1
            print(f"{lineno}: parse-failure  {line}  ({exc})")
        except WikiError as exc:
            failures += 1
            print(f"{lineno}: error  {line}  ({exc})")
    wiki.save(kb, Path(args.kb))
    print(f"imported with {failures} failed line(s)")
    return OK


def cmd_export_owl(args) -> int:
    kb = _load_kb(Path(args.kb))
    document = wiki.export_owl(kb)
    if args.output:
        Path(args.output).write_text(document, encoding="utf-8")
    else:
        sys.stdout.write(document)
    return OK


def cmd_stats(args) -> int:
    kb = _load_kb(Path(args.kb))
    for key, value in stats_mod.analyze_corpus(kb).as_dict().items():
        if isinstance(value, float):
            print(f"{key}: {value:.3f}")
        else:
            print(f"{key}: {value}")
    return OK


def cmd_check(args) -> int:
    kb = _load_kb(Path(args.kb))
    problems = wiki.verify_invariants(kb)
    if problems:
        for p in problems:
            print(f"INVARIANT VIOLATED: {p}", file=sys.stderr)
        return INTERNAL_ERROR
    print("all invariants hold")
    return OK


def cmd_complete(args) -> int:
    kb = _load_kb(Path(args.kb))
    prefix = tokenize(" ".join(args.tokens), kb.lexicon) if args.tokens else []
    menu = kb.grammar.next_tokens(prefix)
    for label, tokens in menu.groups:
        print(f"{label}: {' '.join(tokens)}")
    return OK


def cmd_add_word(args) -> int:
    kb = _load_or_new(Path(args.kb))
    category = WordCategory(args.category)
    roles = [role for role, _ in FORM_ROLES[category]]
    if len(args.forms) > len(roles):
        print(f"error: {category.value} takes at most {len(roles)} forms", file=sys.stderr)
        return USER_ERROR
    forms = dict(zip(roles, args.forms))
    kb, entry = wiki.add_word(kb, category, forms)
    wiki.save(kb, Path(args.kb))
    print(f"added {entry.category.value} {entry.id}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cnlwiki", description="Controlled-English semantic wiki engine"
    )
    parser.add_argument("--kb", default="wiki-kb", help="knowledge-base directory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="run the HTTP API (and UI, when built)")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(fn=cmd_serve)

    p = sub.add_parser("import", help="import statements, one per line")
    p.add_argument("file")
    p.add_argument("--page", default="imported", help="target page (created if missing)")
    p.set_defaults(fn=cmd_import)

    p = sub.add_parser("export-owl", help="write the OWL functional-syntax export")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_export_owl)

    p = sub.add_parser("stats", help="corpus statistics")
    p.set_defaults(fn=cmd_stats)

    p = sub.add_parser("check", help="re-verify engine invariants")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("complete", help="show the lookahead menu for a token prefix")
    p.add_argument("tokens", nargs="*")
    p.set_defaults(fn=cmd_complete)

    p = sub.add_parser("add-word", help="define a word (forms in category order)")
    p.add_argument("category", choices=[c.value for c in WordCategory])
    p.add_argument("forms", nargs="+")
    p.set_defaults(fn=cmd_add_word)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except WikiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USER_ERROR
    except Exception as exc:  # pragma: no cover - internal bug guard
        print(f"internal error: {exc}", file=sys.stderr)
        return INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
