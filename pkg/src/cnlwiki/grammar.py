"""Controlled-English grammar: tokenizer, chart parser, lookahead menus.

The grammar is a fixed context-free production set over function words and
lexical terminal classes. It is compiled against a lexicon snapshot: terminal
classes that no word inhabits are pruned so that lookahead menus never offer
a token that cannot be completed to a full sentence.

Parsing and lookahead use an Earley chart; the sentence/prefix enumerators
expand derivations top-down and act as an independent oracle for the menu
logic in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple

from .errors import (
    AmbiguityError,
    DeadEndError,
    SentenceSyntaxError,
    UnknownTokenError,
)
from .lexicon import Lexicon, WordCategory, article_for, resolve_token

FUNCTION_WORDS = frozenset(
    """
    a an every no some the he she it if then and or is are does not by of
    that who which somebody something what at least most exactly more less
    than
    """.split()
)

VARIABLES = ("X", "Y", "Z")
TERMINATORS = (".", "?")

DEFAULT_MAX_NUMBER = 100


@dataclass(frozen=True)
class Token:
    kind: str  # word | lex | var | num | term
    surface: str
    entry_id: Optional[str] = None
    category: Optional[WordCategory] = None
    roles: frozenset = frozenset()
    value: Optional[int] = None

    def __repr__(self):
        return f"Token({self.surface!r})"


def _word(surface):
    return Token(kind="word", surface=surface)


def _terminator(surface):
    return Token(kind="term", surface=surface)


def _max_form_words(lexicon: Lexicon) -> int:
    longest = 1
    for surface in lexicon.index:
        longest = max(longest, surface.count("_") + 1)
    return longest


def tokenize(text: str, lexicon: Lexicon):
    """Split a statement into tokens, joining multiword forms longest-first."""
    pieces = []
    for raw in text.split():
        if raw in TERMINATORS:
            pieces.append(raw)
        elif len(raw) > 1 and raw[-1] in TERMINATORS:
            pieces.append(raw[:-1])
            pieces.append(raw[-1])
        else:
            pieces.append(raw)

    tokens = []
    limit = _max_form_words(lexicon)
    i = 0
    while i < len(pieces):
        piece = pieces[i]
        if piece in TERMINATORS:
            tokens.append(_terminator(piece))
            i += 1
            continue
        token, consumed = _match_lexical(pieces, i, lexicon, limit)
        if token is not None:
            tokens.append(token)
            i += consumed
            continue
        candidates = [piece]
        if i == 0 and piece[:1].isupper():
            candidates.append(piece[0].lower() + piece[1:])
        matched = None
        for cand in candidates:
            if cand in FUNCTION_WORDS:
                matched = _word(cand)
                break
        if matched is None and piece in VARIABLES:
            matched = Token(kind="var", surface=piece)
        if matched is None and piece.isdigit():
            if piece != "0" and not piece.startswith("0"):
                matched = Token(kind="num", surface=piece, value=int(piece))
        if matched is None:
            raise UnknownTokenError(piece, i)
        tokens.append(matched)
        i += 1
    return tokens


def _match_lexical(pieces, i, lexicon, limit):
    for k in range(min(limit, len(pieces) - i), 0, -1):
        chunk = pieces[i : i + k]
        if any(p in TERMINATORS for p in chunk):
            continue
        joined = "_".join(chunk)
        candidates = [joined]
        if i == 0 and joined[:1].isupper():
            candidates.append(joined[0].lower() + joined[1:])
        for cand in candidates:
            hits = resolve_token(lexicon, cand)
            if hits:
                entry = hits[0][0]
                roles = frozenset(role for _, role in hits)
                token = Token(
                    kind="lex",
                    surface=cand,
                    entry_id=entry.id,
                    category=entry.category,
                    roles=roles,
                )
                return token, k
    return None, 0


def render_tokens(tokens: Sequence[Token]) -> str:
    """Display text: blank-separated, terminator attached, first letter upper."""
    if not tokens:
        return ""
    words = []
    for t in tokens:
        if t.kind == "term" and words:
            words[-1] = words[-1] + t.surface
        else:
            words.append(t.surface)
    text = " ".join(words)
    return text[0].upper() + text[1:] if text else text


# ---------------------------------------------------------------------------
# Production table
# ---------------------------------------------------------------------------

def _n(name):
    return ("n", name)


def _w(word):
    return ("w", word)


def _c(cat):
    return ("c", cat)


_RAW_PRODUCTIONS = [
    ("s_decl", "S", (_n("DECL"), _w("."))),
    ("s_quest", "S", (_n("QUEST"), _w("?"))),
    ("decl_simple", "DECL", (_n("SSTAT"),)),
    ("decl_cond", "DECL", (_w("if"), _n("CSTAT"), _w("then"), _n("CSTAT"))),
    ("cstat_one", "CSTAT", (_n("ANDS"),)),
    ("cstat_or", "CSTAT", (_n("ANDS"), _w("or"), _n("CSTAT"))),
    ("ands_one", "ANDS", (_n("SSTAT"),)),
    ("ands_and", "ANDS", (_n("SSTAT"), _w("and"), _n("ANDS"))),
    ("sstat_sg", "SSTAT", (_n("NPSG"), _n("VPSG"))),
    ("sstat_pl", "SSTAT", (_n("NPPL"), _n("VPPL"))),
    # singular noun phrases
    ("npsg_a", "NPSG", (_w("a"), _n("N1SGA"))),
    ("npsg_an", "NPSG", (_w("an"), _n("N1SGAN"))),
    ("npsg_every", "NPSG", (_w("every"), _n("N1SG"))),
    ("npsg_no", "NPSG", (_w("no"), _n("N1SG"))),
    ("npsg_the", "NPSG", (_w("the"), _n("N1SG"))),
    ("npsg_card1", "NPSG", (_n("CARD1"), _n("N1SG"))),
    ("npsg_pn", "NPSG", (_c("pn"),)),
    ("npsg_var", "NPSG", (_c("var"),)),
    ("npsg_somebody", "NPSG", (_w("somebody"),)),
    ("npsg_somebody_var", "NPSG", (_w("somebody"), _c("var"))),
    ("npsg_something", "NPSG", (_w("something"),)),
    ("npsg_something_var", "NPSG", (_w("something"), _c("var"))),
    ("npsg_he", "NPSG", (_w("he"),)),
    ("npsg_she", "NPSG", (_w("she"),)),
    ("npsg_it", "NPSG", (_w("it"),)),
    # cardinality determiners with the number 1 keep a singular head noun
    ("card1_atleast", "CARD1", (_w("at"), _w("least"), _c("num1"))),
    ("card1_atmost", "CARD1", (_w("at"), _w("most"), _c("num1"))),
    ("card1_exactly", "CARD1", (_w("exactly"), _c("num1"))),
    ("card1_more", "CARD1", (_w("more"), _w("than"), _c("num1"))),
    ("card1_less", "CARD1", (_w("less"), _w("than"), _c("num1"))),
    ("n1sg_a", "N1SG", (_n("N1SGA"),)),
    ("n1sg_an", "N1SG", (_n("N1SGAN"),)),
    ("n1sga_n", "N1SGA", (_c("nsga"),)),
    ("n1sga_rel", "N1SGA", (_c("nsga"), _n("RELSG"))),
    ("n1sga_of", "N1SGA", (_c("ofa"), _w("of"), _n("OBJ"))),
    ("n1sgan_n", "N1SGAN", (_c("nsgan"),)),
    ("n1sgan_rel", "N1SGAN", (_c("nsgan"), _n("RELSG"))),
    ("n1sgan_of", "N1SGAN", (_c("ofan"), _w("of"), _n("OBJ"))),
    # plural noun phrases
    ("nppl_some", "NPPL", (_w("some"), _n("N1PL"))),
    ("nppl_card", "NPPL", (_n("CARDPL"), _n("N1PL"))),
    ("cardpl_atleast", "CARDPL", (_w("at"), _w("least"), _c("num"))),
    ("cardpl_atmost", "CARDPL", (_w("at"), _w("most"), _c("num"))),
    ("cardpl_exactly", "CARDPL", (_w("exactly"), _c("num"))),
    ("cardpl_more", "CARDPL", (_w("more"), _w("than"), _c("num"))),
    ("cardpl_less", "CARDPL", (_w("less"), _w("than"), _c("num"))),
    ("n1pl_n", "N1PL", (_c("npl"),)),
    ("n1pl_rel", "N1PL", (_c("npl"), _n("RELPL"))),
    # relative clauses, agreeing in number with the head noun
    ("relsg_one", "RELSG", (_n("RELPRON"), _n("VPSG"))),
    ("relsg_and", "RELSG", (_n("RELPRON"), _n("VPSG"), _w("and"), _n("RELSG"))),
    ("relsg_or", "RELSG", (_n("RELPRON"), _n("VPSG"), _w("or"), _n("RELSG"))),
    ("relpl_one", "RELPL", (_n("RELPRON"), _n("VPPL"))),
    ("relpl_and", "RELPL", (_n("RELPRON"), _n("VPPL"), _w("and"), _n("RELPL"))),
    ("relpl_or", "RELPL", (_n("RELPRON"), _n("VPPL"), _w("or"), _n("RELPL"))),
    ("relpron_that", "RELPRON", (_w("that"),)),
    ("relpron_who", "RELPRON", (_w("who"),)),
    ("relpron_which", "RELPRON", (_w("which"),)),
    # verb phrases: "and" binds tighter than "or", both right-associative
    ("vpsg_one", "VPSG", (_n("VPANDSG"),)),
    ("vpsg_or", "VPSG", (_n("VPANDSG"), _w("or"), _n("VPSG"))),
    ("vpandsg_one", "VPANDSG", (_n("VPATOMSG"),)),
    ("vpandsg_and", "VPANDSG", (_n("VPATOMSG"), _w("and"), _n("VPANDSG"))),
    ("vpatomsg_tv", "VPATOMSG", (_c("v3"), _n("OBJ"))),
    ("vpatomsg_negtv", "VPATOMSG", (_w("does"), _w("not"), _c("vinf"), _n("OBJ"))),
    ("vpatomsg_cop", "VPATOMSG", (_w("is"), _n("COMPLSG"))),
    ("vpatomsg_negcop", "VPATOMSG", (_w("is"), _w("not"), _n("COMPLSG"))),
    ("vpatomsg_passive", "VPATOMSG", (_w("is"), _c("vpp"), _w("by"), _n("OBJ"))),
    ("complsg_a", "COMPLSG", (_w("a"), _n("N1SGA"))),
    ("complsg_an", "COMPLSG", (_w("an"), _n("N1SGAN"))),
    ("complsg_adj", "COMPLSG", (_c("tadj"), _n("OBJ"))),
    ("vppl_one", "VPPL", (_n("VPANDPL"),)),
    ("vppl_or", "VPPL", (_n("VPANDPL"), _w("or"), _n("VPPL"))),
    ("vpandpl_one", "VPANDPL", (_n("VPATOMPL"),)),
    ("vpandpl_and", "VPANDPL", (_n("VPATOMPL"), _w("and"), _n("VPANDPL"))),
    ("vpatompl_tv", "VPATOMPL", (_c("vinf"), _n("OBJ"))),
    ("vpatompl_cop", "VPATOMPL", (_w("are"), _n("COMPLPL"))),
    ("vpatompl_negcop", "VPATOMPL", (_w("are"), _w("not"), _n("COMPLPL"))),
    ("vpatompl_passive", "VPATOMPL", (_w("are"), _c("vpp"), _w("by"), _n("OBJ"))),
    ("complpl_n", "COMPLPL", (_n("N1PL"),)),
    ("complpl_adj", "COMPLPL", (_c("tadj"), _n("OBJ"))),
    ("obj_sg", "OBJ", (_n("NPSG"),)),
    ("obj_pl", "OBJ", (_n("NPPL"),)),
    # questions: the wh-phrase is always the subject
    ("quest_what", "QUEST", (_w("what"), _n("QVP"))),
    ("quest_who", "QUEST", (_w("who"), _n("QVP"))),
    ("quest_which_sg", "QUEST", (_w("which"), _n("N1SG"), _n("VPSG"))),
    ("quest_which_pl", "QUEST", (_w("which"), _n("N1PL"), _n("VPPL"))),
    ("qvp_vp", "QVP", (_n("VPSG"),)),
    ("qvp_is_pn", "QVP", (_w("is"), _c("pn"))),
]

START = "S"

MENU_GROUP_ORDER = (
    "function word",
    "proper name",
    "noun",
    "verb",
    "of-construct",
    "adjective",
    "variable",
    "number",
)

_CAT_GROUP = {
    "pn": "proper name",
    "nsga": "noun",
    "nsgan": "noun",
    "npl": "noun",
    "v3": "verb",
    "vinf": "verb",
    "vpp": "verb",
    "ofa": "of-construct",
    "ofan": "of-construct",
    "tadj": "adjective",
    "var": "variable",
    "num1": "number",
    "num": "number",
}


@dataclass(frozen=True)
class CompletionMenu:
    groups: Tuple[Tuple[str, Tuple[str, ...]], ...]

    def tokens(self):
        out = set()
        for _, members in self.groups:
            out.update(members)
        return out

    def __contains__(self, surface):
        return any(surface in members for _, members in self.groups)


@dataclass(frozen=True)
class Leaf:
    token: Token

    @property
    def is_leaf(self):
        return True


@dataclass(frozen=True)
class Node:
    rule: str
    symbol: str
    children: Tuple

    @property
    def is_leaf(self):
        return False

    def leaves(self):
        out = []
        stack = [self]
        while stack:
            n = stack.pop()
            if n.is_leaf:
                out.append(n.token)
            else:
                stack.extend(reversed(n.children))
        return out

    @property
    def is_question(self):
        return self.rule == "s_quest"


def verbalize(tree: Node) -> str:
    return render_tokens(tree.leaves())


class Grammar:
    """Production set compiled against one lexicon snapshot."""

    def __init__(self, lexicon: Lexicon, max_number: int = DEFAULT_MAX_NUMBER):
        self.lexicon = lexicon
        self.max_number = max_number
        self._compile()

    # -- compilation -------------------------------------------------------

    def _cat_inhabited(self, cat) -> bool:
        lex = self.lexicon
        if cat == "var":
            return True
        if cat == "num1":
            return self.max_number >= 1
        if cat == "num":
            return self.max_number >= 2
        return bool(self._cat_tokens(cat))

    def _cat_tokens(self, cat):
        """All lexicon surfaces matching one terminal class."""
        lex = self.lexicon
        if cat == "pn":
            out = []
            for e in lex.by_category(WordCategory.PROPER_NAME):
                out.append(e.forms["long"])
                if "abbreviation" in e.forms:
                    out.append(e.forms["abbreviation"])
            return out
        if cat in ("nsga", "nsgan"):
            article = "a" if cat == "nsga" else "an"
            return [
                s
                for s in lex.surfaces(WordCategory.NOUN, "singular")
                if article_for(s) == article
            ]
        if cat == "npl":
            return lex.surfaces(WordCategory.NOUN, "plural")
        if cat == "v3":
            return lex.surfaces(WordCategory.TRANSITIVE_VERB, "third_singular")
        if cat == "vinf":
            return lex.surfaces(WordCategory.TRANSITIVE_VERB, "bare_infinitive")
        if cat == "vpp":
            return lex.surfaces(WordCategory.TRANSITIVE_VERB, "past_participle")
        if cat in ("ofa", "ofan"):
            article = "a" if cat == "ofa" else "an"
            return [
                s
                for s in lex.surfaces(WordCategory.OF_CONSTRUCT, "noun_part")
                if article_for(s) == article
            ]
        if cat == "tadj":
            return lex.surfaces(WordCategory.TRANSITIVE_ADJECTIVE, "adjective")
        if cat == "var":
            return list(VARIABLES)
        if cat == "num1":
            return ["1"] if self.max_number >= 1 else []
        if cat == "num":
            return [str(n) for n in range(2, self.max_number + 1)]
        raise ValueError(cat)

    def _compile(self):
        # drop productions using uninhabited terminal classes, then iterate
        # until every kept production is built from productive symbols only
        alive = {
            cat: self._cat_inhabited(cat)
            for cat in {sym[1] for _, _, rhs in _RAW_PRODUCTIONS for sym in rhs if sym[0] == "c"}
        }
        prods = [
            (rid, lhs, rhs)
            for rid, lhs, rhs in _RAW_PRODUCTIONS
            if all(sym[0] != "c" or alive[sym[1]] for sym in rhs)
        ]
        productive = set()
        while True:
            changed = False
            for rid, lhs, rhs in prods:
                if lhs in productive:
                    continue
                if all(sym[0] != "n" or sym[1] in productive for sym in rhs):
                    productive.add(lhs)
                    changed = True
            if not changed:
                break
        self.productions = tuple(
            (rid, lhs, rhs)
            for rid, lhs, rhs in prods
            if lhs in productive
            and all(sym[0] != "n" or sym[1] in productive for sym in rhs)
        )
        self._by_lhs = {}
        for idx, (rid, lhs, rhs) in enumerate(self.productions):
            self._by_lhs.setdefault(lhs, []).append(idx)
        # minimal terminal yield per symbol, for enumeration pruning
        minlen = {}
        for _ in range(len(self.productions) + 1):
            changed = False
            for rid, lhs, rhs in self.productions:
                total = 0
                ok = True
                for sym in rhs:
                    if sym[0] == "n":
                        if sym[1] not in minlen:
                            ok = False
                            break
                        total += minlen[sym[1]]
                    else:
                        total += 1
                if ok and total < minlen.get(lhs, 10**9):
                    minlen[lhs] = total
                    changed = True
            if not changed:
                break
        self._minlen = minlen

    # -- terminal matching --------------------------------------------------

    def _matches(self, term, token: Token) -> bool:
        kind, value = term
        if kind == "w":
            return token.surface == value and token.kind in ("word", "term")
        cat = value
        if cat == "pn":
            return token.kind == "lex" and token.category is WordCategory.PROPER_NAME
        if cat in ("nsga", "nsgan"):
            return (
                token.kind == "lex"
                and token.category is WordCategory.NOUN
                and "singular" in token.roles
                and article_for(token.surface) == ("a" if cat == "nsga" else "an")
            )
        if cat == "npl":
            return (
                token.kind == "lex"
                and token.category is WordCategory.NOUN
                and "plural" in token.roles
            )
        if cat == "v3":
            return (
                token.kind == "lex"
                and token.category is WordCategory.TRANSITIVE_VERB
                and "third_singular" in token.roles
            )
        if cat == "vinf":
            return (
                token.kind == "lex"
                and token.category is WordCategory.TRANSITIVE_VERB
                and "bare_infinitive" in token.roles
            )
        if cat == "vpp":
            return (
                token.kind == "lex"
                and token.category is WordCategory.TRANSITIVE_VERB
                and "past_participle" in token.roles
            )
        if cat in ("ofa", "ofan"):
            return (
                token.kind == "lex"
                and token.category is WordCategory.OF_CONSTRUCT
                and article_for(token.surface) == ("a" if cat == "ofa" else "an")
            )
        if cat == "tadj":
            return (
                token.kind == "lex"
                and token.category is WordCategory.TRANSITIVE_ADJECTIVE
            )
        if cat == "var":
            return token.kind == "var"
        if cat == "num1":
            return token.kind == "num" and token.value == 1
        if cat == "num":
            return token.kind == "num" and 2 <= token.value <= self.max_number
        raise ValueError(cat)

    # -- Earley chart -------------------------------------------------------

    def _initial_chart(self):
        state = {}
        work = [(p, 0, 0) for p in self._by_lhs.get(START, [])]
        self._close(state, work, [state], 0)
        return [state]

    def _close(self, state, work, chart, k):
        for item in work:
            if item in state:
                continue
            state[item] = None
        queue = list(state)
        qi = 0
        while qi < len(queue):
            p, d, o = queue[qi]
            qi += 1
            rid, lhs, rhs = self.productions[p]
            if d < len(rhs):
                sym = rhs[d]
                if sym[0] == "n":
                    for q in self._by_lhs.get(sym[1], ()):
                        it = (q, 0, k)
                        if it not in state:
                            state[it] = None
                            queue.append(it)
            else:
                for p2, d2, o2 in list(chart[o]):
                    rhs2 = self.productions[p2][2]
                    if d2 < len(rhs2) and rhs2[d2] == ("n", lhs):
                        it = (p2, d2 + 1, o2)
                        if it not in state:
                            state[it] = None
                            queue.append(it)

    def _advance(self, chart, token: Token):
        """Scan one token; returns the extended chart or None."""
        last = chart[-1]
        moved = []
        for p, d, o in last:
            rhs = self.productions[p][2]
            if d < len(rhs) and rhs[d][0] != "n" and self._matches(rhs[d], token):
                moved.append((p, d + 1, o))
        if not moved:
            return None
        new_chart = list(chart)
        state = {}
        new_chart.append(state)
        self._close(state, moved, new_chart, len(new_chart) - 1)
        return new_chart

    def _expected_terminals(self, state):
        seen = {}
        for p, d, o in state:
            rhs = self.productions[p][2]
            if d < len(rhs) and rhs[d][0] != "n":
                seen[rhs[d]] = None
        return list(seen)

    def chart_for(self, tokens: Sequence[Token]):
        chart = self._initial_chart()
        for i, token in enumerate(tokens):
            nxt = self._advance(chart, token)
            if nxt is None:
                raise SentenceSyntaxError(i, self._menu_from_state(chart[-1]))
            chart = nxt
        return chart

    # -- parsing ------------------------------------------------------------

    def parse(self, tokens: Sequence[Token]) -> Node:
        chart = self.chart_for(tokens)
        n = len(tokens)
        if not tokens or tokens[-1].kind != "term":
            raise SentenceSyntaxError(n, self._menu_from_state(chart[-1]))
        done = [
            (p, d, o)
            for (p, d, o) in chart[-1]
            if o == 0
            and d == len(self.productions[p][2])
            and self.productions[p][1] == START
        ]
        if not done:
            raise SentenceSyntaxError(n, self._menu_from_state(chart[-1]))
        trees = self._derive(chart, tokens, START, 0, n, limit=2)
        if len(trees) > 1:
            raise AmbiguityError(render_tokens(tokens))
        return trees[0]

    def count_parses(self, tokens: Sequence[Token], limit=4) -> int:
        """Number of distinct parse trees (capped); ambiguity test hook."""
        try:
            chart = self.chart_for(tokens)
        except SentenceSyntaxError:
            return 0
        return len(self._derive(chart, tokens, START, 0, len(tokens), limit=limit))

    def _derive(self, chart, tokens, symbol, i, j, limit):
        # completed spans: (symbol, origin) -> end -> productions
        table = {}
        for end, state in enumerate(chart):
            for p, d, o in state:
                rid, lhs, rhs = self.productions[p]
                if d == len(rhs):
                    table.setdefault((lhs, o), {}).setdefault(end, []).append(p)

        memo = {}

        def derive_symbol(sym, a, b):
            key = (sym, a, b)
            if key in memo:
                return memo[key]
            memo[key] = []  # cycle guard; no cyclic unit chains in this grammar
            results = []
            for p in table.get((sym, a), {}).get(b, []):
                rid, lhs, rhs = self.productions[p]
                for children in match_rhs(rhs, 0, a, b):
                    results.append(Node(rule=rid, symbol=sym, children=tuple(children)))
                    if len(results) >= limit:
                        break
                if len(results) >= limit:
                    break
            memo[key] = results
            return results

        def match_rhs(rhs, idx, a, b):
            if idx == len(rhs):
                if a == b:
                    yield []
                return
            sym = rhs[idx]
            if sym[0] == "n":
                ends = sorted(table.get((sym[1], a), {}))
                for m in ends:
                    if m > b:
                        break
                    for head in derive_symbol(sym[1], a, m):
                        for rest in match_rhs(rhs, idx + 1, m, b):
                            yield [head] + rest
            else:
                if a < b and self._matches(sym, tokens[a]):
                    for rest in match_rhs(rhs, idx + 1, a + 1, b):
                        yield [Leaf(tokens[a])] + rest

        return derive_symbol(symbol, i, j)

    # -- lookahead ----------------------------------------------------------

    def next_tokens(self, prefix: Sequence[Token]) -> CompletionMenu:
        chart = self._initial_chart()
        for i, token in enumerate(prefix):
            nxt = self._advance(chart, token)
            if nxt is None:
                raise DeadEndError(f"prefix dies at token {i} ({token.surface!r})")
            chart = nxt
        menu = self._menu_from_state(chart[-1])
        if not menu.groups:
            raise DeadEndError("prefix has no continuation")
        return menu

    def _menu_from_state(self, state) -> CompletionMenu:
        grouped = {}
        for term in self._expected_terminals(state):
            kind, value = term
            if kind == "w":
                grouped.setdefault("function word", set()).add(value)
            else:
                label = _CAT_GROUP[value]
                grouped.setdefault(label, set()).update(self._cat_tokens(value))
        groups = []
        for label in MENU_GROUP_ORDER:
            if label in grouped:
                members = grouped[label]
                if label == "number":
                    ordered = tuple(sorted(members, key=int))
                else:
                    ordered = tuple(sorted(members))
                groups.append((label, ordered))
        return CompletionMenu(groups=tuple(groups))

    # -- derivation-based enumeration (test oracle) --------------------------

    def token_for_surface(self, surface: str) -> Token:
        """Reconstruct the Token for one canonical surface."""
        if surface in TERMINATORS:
            return _terminator(surface)
        if surface in FUNCTION_WORDS:
            return _word(surface)
        if surface in VARIABLES:
            return Token(kind="var", surface=surface)
        if surface.isdigit():
            return Token(kind="num", surface=surface, value=int(surface))
        hits = resolve_token(self.lexicon, surface)
        entry = hits[0][0]
        return Token(
            kind="lex",
            surface=surface,
            entry_id=entry.id,
            category=entry.category,
            roles=frozenset(r for _, r in hits),
        )

    def _terminal_surfaces(self, term, representatives=False):
        """Candidate token surfaces for a terminal symbol.

        With ``representatives`` each terminal class contributes one token
        only; within a class, tokens are interchangeable for both the chart
        parser and this enumerator (their terminal matching is identical),
        so one representative explores the same tree shapes.
        """
        kind, value = term
        if kind == "w":
            return (value,)
        surfaces = sorted(self._cat_tokens(value), key=lambda s: (len(s), s))
        if representatives and surfaces:
            return (surfaces[0],)
        return tuple(surfaces)

    def _derivation_walk(self, max_tokens: int, prune_incomplete: bool, representatives=False):
        """Walk the prefix tree of leftmost derivations.

        Yields (prefix surfaces, is-complete-sentence) for every reachable
        prefix of length <= max_tokens. Each tree node carries the set of
        remaining sentential forms; nonterminal heads are closed off before
        branching on the next token. With ``prune_incomplete`` forms whose
        minimal completion exceeds the remaining budget are dropped, so only
        sentences of length <= max_tokens survive. Entirely independent of
        the Earley chart: this is the test oracle for the lookahead menus.
        """
        minlen = self._minlen
        expansions = {}
        for lhs, prods in self._by_lhs.items():
            expansions[lhs] = [self.productions[p][2] for p in prods]

        closure_memo = {}

        def closure(forms):
            key = frozenset(forms)
            hit = closure_memo.get(key)
            if hit is not None:
                return hit
            out = []
            stack = list(key)
            seen = set(key)
            while stack:
                form = stack.pop()
                if not form or form[0][0] != "n":
                    out.append(form)
                    continue
                tail = form[1:]
                for rhs in expansions[form[0][1]]:
                    new_form = rhs + tail
                    if new_form not in seen:
                        seen.add(new_form)
                        stack.append(new_form)
            out = tuple(sorted(out))
            closure_memo[key] = out
            return out

        need_memo = {}

        def need(form):
            hit = need_memo.get(form)
            if hit is None:
                hit = sum(minlen[s[1]] if s[0] == "n" else 1 for s in form)
                need_memo[form] = hit
            return hit

        term_cache = {}

        def surfaces_of(term):
            hit = term_cache.get(term)
            if hit is None:
                hit = self._terminal_surfaces(term, representatives)
                term_cache[term] = hit
            return hit

        def node(prefix, forms):
            forms = closure(forms)
            yield prefix, () in forms
            budget = max_tokens - len(prefix)
            if budget <= 0:
                return
            children = {}
            for form in forms:
                if not form:
                    continue
                rest = form[1:]
                if prune_incomplete and 1 + need(rest) > budget:
                    continue
                for surface in surfaces_of(form[0]):
                    children.setdefault(surface, set()).add(rest)
            for surface in sorted(children):
                yield from node(prefix + (surface,), children[surface])

        yield from node((), {(("n", START),)})

    def enumerate_sentences(
        self, max_tokens: int, representatives=False
    ) -> Iterator[Tuple[Token, ...]]:
        """Exactly the accepted sentences of length <= max_tokens, no duplicates."""
        for surfaces, complete in self._derivation_walk(
            max_tokens, prune_incomplete=True, representatives=representatives
        ):
            if complete:
                yield tuple(self.token_for_surface(s) for s in surfaces)

    def lookahead_tree(self, max_tokens: int, representatives=False):
        """Preorder walk of the derivation tree with exact viable-token sets.

        Yields (prefix surfaces, viable next surfaces, is-complete) for every
        prefix of a sentence of length <= max_tokens. The viable set has no
        length cutoff (it reads the sentential forms directly), so it is the
        precise reference for the chart-based lookahead menus; only the
        recursion is pruned to sentences within the budget.
        """
        minlen = self._minlen
        expansions = {}
        for lhs, prods in self._by_lhs.items():
            expansions[lhs] = [self.productions[p][2] for p in prods]

        closure_memo = {}

        def closure(forms):
            key = frozenset(forms)
            hit = closure_memo.get(key)
            if hit is not None:
                return hit
            out = []
            stack = list(key)
            seen = set(key)
            while stack:
                form = stack.pop()
                if not form or form[0][0] != "n":
                    out.append(form)
                    continue
                tail = form[1:]
                for rhs in expansions[form[0][1]]:
                    new_form = rhs + tail
                    if new_form not in seen:
                        seen.add(new_form)
                        stack.append(new_form)
            out = tuple(sorted(out))
            closure_memo[key] = out
            return out

        need_memo = {}

        def need(form):
            hit = need_memo.get(form)
            if hit is None:
                hit = sum(minlen[s[1]] if s[0] == "n" else 1 for s in form)
                need_memo[form] = hit
            return hit

        term_cache = {}

        def surfaces_of(term):
            hit = term_cache.get(term)
            if hit is None:
                hit = self._terminal_surfaces(term, representatives)
                term_cache[term] = hit
            return hit

        def node(prefix, forms):
            forms = closure(forms)
            viable = set()
            children = {}
            descend = set()
            budget = max_tokens - len(prefix)
            for form in forms:
                if not form:
                    continue
                rest = form[1:]
                surfaces = surfaces_of(form[0])
                viable.update(surfaces)
                # children carry every continuation form so viability stays
                # exact below; descent is limited to tokens that still lead
                # to a sentence within the budget
                within = budget > 0 and 1 + need(rest) <= budget
                for surface in surfaces:
                    children.setdefault(surface, set()).add(rest)
                    if within:
                        descend.add(surface)
            yield prefix, viable, () in forms
            for surface in sorted(descend):
                yield from node(prefix + (surface,), children[surface])

        yield from node((), {(("n", START),)})

    def enumerate_prefixes(self, max_tokens: int, representatives=False):
        """Every valid sentence prefix of length <= max_tokens (as surfaces).

        Includes the empty prefix and complete sentences. Prefix validity has
        no length cutoff: a prefix is listed when ANY sentence extends it,
        which makes this the exact oracle for lookahead menus, independent of
        the Earley chart.
        """
        return {
            surfaces
            for surfaces, _complete in self._derivation_walk(
                max_tokens, prune_incomplete=False, representatives=representatives
            )
        }


# -- module-level convenience wrappers --------------------------------------

def parse(tokens, lexicon, max_number: int = DEFAULT_MAX_NUMBER) -> Node:
    return Grammar(lexicon, max_number).parse(tokens)


def next_tokens(prefix, lexicon, max_number: int = DEFAULT_MAX_NUMBER) -> CompletionMenu:
    return Grammar(lexicon, max_number).next_tokens(prefix)


def enumerate_sentences(lexicon, max_tokens, max_number: int = DEFAULT_MAX_NUMBER):
    return Grammar(lexicon, max_number).enumerate_sentences(max_tokens)
