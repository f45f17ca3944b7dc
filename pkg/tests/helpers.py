"""Shared fixtures: lexicons, wiki builders, and the random-KB generator."""

import random

from cnlwiki import dl
from cnlwiki.grammar import Grammar
from cnlwiki.lexicon import WordCategory, add_entry, empty_lexicon
from cnlwiki import wiki

N = WordCategory.NOUN
PN = WordCategory.PROPER_NAME
V = WordCategory.TRANSITIVE_VERB
OF = WordCategory.OF_CONSTRUCT
ADJ = WordCategory.TRANSITIVE_ADJECTIVE


def noun(sg, pl):
    return (N, {"singular": sg, "plural": pl})

def name(long, abbrev=None):
    forms = {"long": long}
    if abbrev:
        forms["abbreviation"] = abbrev
    return (PN, forms)

def verb(third, inf, pp=None):
    forms = {"third_singular": third, "bare_infinitive": inf}
    if pp:
        forms["past_participle"] = pp
    return (V, forms)

def of_noun(part):
    return (OF, {"noun_part": part})

def adjective(adj):
    return (ADJ, {"adjective": adj})


TINY_WORDS = [
    noun("city", "cities"),
    name("Zurich"),
    verb("borders", "border", "bordered"),
]

# the semantics fixtures: everything the worked examples mention
CORE_WORDS = [
    noun("person", "persons"),
    noun("book", "books"),
    noun("author", "authors"),
    noun("student", "students"),
    noun("professor", "professors"),
    noun("city", "cities"),
    noun("country", "countries"),
    noun("area", "areas"),
    noun("lecture", "lectures"),
    noun("lecturer", "lecturers"),
    noun("assistant", "assistants"),
    noun("university", "universities"),
    noun("man", "men"),
    noun("car", "cars"),
    name("Zurich"),
    name("Switzerland"),
    name("Germany"),
    verb("writes", "write", "written"),
    verb("hates", "hate"),
    verb("likes", "like"),
    verb("knows", "know"),
    verb("contains", "contain"),
    verb("attends", "attend", "attended"),
    verb("employs", "employ", "employed"),
    verb("borders", "border", "bordered"),
    verb("owns", "own", "owned"),
    of_noun("part"),
    adjective("larger_than"),
    adjective("indifferent_to"),
    adjective("located_in"),
]

GEO_WORDS = [
    noun("country", "countries"),
    noun("area", "areas"),
    noun("city", "cities"),
    name("Switzerland"),
    name("Germany"),
    name("Italy"),
    name("Austria"),
    name("Zurich"),
    verb("borders", "border", "bordered"),
    verb("contains", "contain", "contained"),
    adjective("larger_than"),
]

# the 15-word lexicon pinned by the prediction acceptance criterion
WORDS15 = [
    noun("country", "countries"),
    noun("area", "areas"),
    noun("city", "cities"),
    name("Zurich"),
    name("Switzerland"),
    name("Germany"),
    name("Italy"),
    verb("borders", "border", "bordered"),
    verb("contains", "contain", "contained"),
    verb("likes", "like"),
    verb("visits", "visit", "visited"),
    adjective("located_in"),
    adjective("larger_than"),
    of_noun("part"),
    of_noun("capital"),
]


def build_lexicon(words):
    lex = empty_lexicon()
    for cat, forms in words:
        lex, _ = add_entry(lex, cat, forms)
    return lex


def build_grammar(words, max_number=100):
    return Grammar(build_lexicon(words), max_number)


def build_kb(words, statements=(), max_number=100):
    """Fresh wiki with the given words and statements (added to word pages)."""
    kb = wiki.new_kb(max_number)
    for cat, forms in words:
        kb, _ = wiki.add_word(kb, cat, forms)
    added = []
    for item in statements:
        if isinstance(item, tuple):
            page_id, text = item
        else:
            page_id, text = next(iter(kb.pages)), item
        kb, st = wiki.add_statement(kb, page_id, text)
        added.append(st)
    return kb, added


# -- random knowledge bases for the reasoner/oracle comparison ----------------
#
# Small-model fragment: GCI left sides are boolean combinations of named
# classes, quantified concepts nest at most one level, and counts stay <= 2,
# so consistent instances have models within the oracle's domain bound.

KB_CLASSES = ["A", "B", "C"]
KB_ROLES = ["r", "s"]
KB_INDIVIDUALS = ["a", "b", "c"]


def _rand_role(rng):
    return dl.Role(rng.choice(KB_ROLES), rng.random() < 0.3)


def _rand_atomic(rng):
    c = dl.Named(rng.choice(KB_CLASSES))
    return dl.Complement(c) if rng.random() < 0.3 else c


def _rand_boolean(rng):
    k = rng.randrange(4)
    if k == 0:
        return dl.Intersection((_rand_atomic(rng), _rand_atomic(rng)))
    if k == 1:
        return dl.Union_((_rand_atomic(rng), _rand_atomic(rng)))
    return _rand_atomic(rng)


def _rand_rhs(rng, in_gci):
    # a counting restriction on the right of a GCI applies to every domain
    # element and quickly escapes the small-model fragment; inside GCIs the
    # generator therefore keeps MinCard at 1 (a plain existential) and uses
    # forward roles for the counts, while assertions get the full range
    k = rng.randrange(8)
    if k <= 1:
        return _rand_atomic(rng)
    if k == 2:
        return dl.Intersection((_rand_atomic(rng), _rand_atomic(rng)))
    if k == 3:
        return dl.Union_((_rand_atomic(rng), _rand_atomic(rng)))
    if k == 4:
        return dl.SomeValuesFrom(_rand_role(rng), _rand_atomic(rng))
    if k == 5:
        return dl.AllValuesFrom(_rand_role(rng), _rand_atomic(rng))
    card_role = dl.Role(rng.choice(KB_ROLES)) if in_gci else _rand_role(rng)
    if k == 6:
        n = 1 if in_gci else rng.randint(1, 2)
        return dl.MinCard(n, card_role, _rand_atomic(rng))
    return dl.MaxCard(rng.randint(0, 2), card_role, _rand_atomic(rng))


def random_kb(rng: random.Random) -> dl.KbSnapshot:
    individuals = KB_INDIVIDUALS[: rng.randint(1, 3)]
    axioms = []
    for _ in range(rng.randint(1, 8)):
        k = rng.randrange(10)
        if k < 4:
            axioms.append(dl.SubClassOf(_rand_boolean(rng), _rand_rhs(rng, in_gci=True)))
        elif k < 5:
            axioms.append(
                dl.SubPropertyOf(dl.Role(rng.choice(KB_ROLES)), dl.Role(rng.choice(KB_ROLES)))
            )
        elif k < 8:
            concept = _rand_boolean(rng) if rng.random() < 0.5 else _rand_rhs(rng, in_gci=False)
            axioms.append(dl.ClassAssertion(concept, rng.choice(individuals)))
        else:
            axioms.append(
                dl.PropertyAssertion(
                    dl.Role(rng.choice(KB_ROLES)),
                    rng.choice(individuals),
                    rng.choice(individuals),
                )
            )
    return dl.KbSnapshot.from_axioms(
        axioms, classes=KB_CLASSES, roles=KB_ROLES, individuals=individuals
    )
