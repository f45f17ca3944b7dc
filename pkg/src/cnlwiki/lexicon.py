"""Word store: the five word categories, their inflected forms, and abbreviations.

A Lexicon is an immutable snapshot; every mutating operation returns a new
snapshot. Surface forms are unique across all categories and roles so that
tokenization never has to guess which word a token belongs to. Multiword
forms are written with blanks which are normalized to underscores.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Optional, Tuple

from .errors import (
    ConflictError,
    InUseError,
    InvalidCharacterError,
    MissingFormError,
    NotFoundError,
    WrongCategoryError,
)


class WordCategory(Enum):
    PROPER_NAME = "proper_name"
    NOUN = "noun"
    TRANSITIVE_VERB = "transitive_verb"
    OF_CONSTRUCT = "of_construct"
    TRANSITIVE_ADJECTIVE = "transitive_adjective"


# form roles per category; None marks an optional role
FORM_ROLES = {
    WordCategory.PROPER_NAME: (("long", True), ("abbreviation", False)),
    WordCategory.NOUN: (("singular", True), ("plural", True)),
    WordCategory.TRANSITIVE_VERB: (
        ("third_singular", True),
        ("bare_infinitive", True),
        ("past_participle", False),
    ),
    WordCategory.OF_CONSTRUCT: (("noun_part", True),),
    WordCategory.TRANSITIVE_ADJECTIVE: (("adjective", True),),
}

# the role whose surface doubles as the entry id (and as the logic predicate)
CANONICAL_ROLE = {
    WordCategory.PROPER_NAME: "long",
    WordCategory.NOUN: "singular",
    WordCategory.TRANSITIVE_VERB: "bare_infinitive",
    WordCategory.OF_CONSTRUCT: "noun_part",
    WordCategory.TRANSITIVE_ADJECTIVE: "adjective",
}

# Surfaces that would collide with the grammar's closed word classes. Blocked
# case-insensitively: sentence-initial words are decapitalized during
# tokenization, so "Every" as a proper name would shadow the determiner.
RESERVED_WORDS = frozenset(
    """
    a an every no some the he she it if then and or is are does not by of
    that who which somebody something what at least most exactly more less
    than x y z
    """.split()
)

VARIABLE_NAMES = ("X", "Y", "Z")


def validate_word_form(surface: str) -> str:
    """Check charset and return the normalized (blank -> underscore) form.

    Allowed: letters, digits, hyphens and blanks (stored as underscores);
    the first character must be a letter.
    """
    if not surface:
        raise InvalidCharacterError(surface, 0, "")
    if not surface[0].isalpha():
        raise InvalidCharacterError(surface, 0, surface[0])
    normalized = []
    for i, ch in enumerate(surface):
        if ch in (" ", "_"):
            normalized.append("_")
        elif ch == "-" or ch.isdigit() or ch.isalpha():
            normalized.append(ch)
        else:
            raise InvalidCharacterError(surface, i, ch)
    form = "".join(normalized)
    if form.lower() in RESERVED_WORDS or form.isdigit():
        raise ConflictError(form, "form collides with a built-in word")
    return form


@dataclass(frozen=True)
class LexEntry:
    id: str
    category: WordCategory
    forms: Mapping[str, str]  # role -> normalized surface

    def form(self, role: str) -> Optional[str]:
        return self.forms.get(role)


@dataclass(frozen=True)
class Lexicon:
    entries: Mapping[str, LexEntry]  # entry id -> entry
    index: Mapping[str, Tuple[Tuple[str, str], ...]]  # surface -> ((entry id, role), ...)

    def entry(self, entry_id: str) -> LexEntry:
        try:
            return self.entries[entry_id]
        except KeyError:
            raise NotFoundError(f"no word {entry_id!r}") from None

    def by_category(self, category: WordCategory):
        return [e for e in self.entries.values() if e.category is category]

    def surfaces(self, category: WordCategory, role: str):
        out = []
        for e in self.entries.values():
            if e.category is category and role in e.forms:
                out.append(e.forms[role])
        return out


def empty_lexicon() -> Lexicon:
    return Lexicon(entries={}, index={})


def _reindex(entries: Mapping[str, LexEntry]) -> dict:
    index: dict = {}
    for e in entries.values():
        for role, surface in e.forms.items():
            index.setdefault(surface, []).append((e.id, role))
    return {s: tuple(v) for s, v in index.items()}


def add_entry(lexicon: Lexicon, category: WordCategory, forms: Mapping[str, str]):
    """Add a word; returns (new lexicon, new entry)."""
    normalized = {}
    for role, required in FORM_ROLES[category]:
        if role in forms and forms[role]:
            normalized[role] = validate_word_form(forms[role])
        elif required:
            raise MissingFormError(category.value, role)
    unknown = set(forms) - {role for role, _ in FORM_ROLES[category]}
    if unknown:
        raise WrongCategoryError(f"roles {sorted(unknown)} not valid for {category.value}")

    for surface in normalized.values():
        if lexicon.index.get(surface):
            raise ConflictError(surface)

    entry_id = normalized[CANONICAL_ROLE[category]]
    if entry_id in lexicon.entries:
        raise ConflictError(entry_id)
    entry = LexEntry(id=entry_id, category=category, forms=normalized)
    entries = dict(lexicon.entries)
    entries[entry_id] = entry
    return Lexicon(entries=entries, index=_reindex(entries)), entry


def set_abbreviation(lexicon: Lexicon, entry_id: str, abbrev: str) -> Lexicon:
    """Attach an abbreviation to a proper name; both surfaces denote one individual."""
    entry = lexicon.entry(entry_id)
    if entry.category is not WordCategory.PROPER_NAME:
        raise WrongCategoryError("only proper names take abbreviations")
    surface = validate_word_form(abbrev)
    for eid, _ in lexicon.index.get(surface, ()):
        raise ConflictError(surface)
    forms = dict(entry.forms)
    forms["abbreviation"] = surface
    entries = dict(lexicon.entries)
    entries[entry_id] = LexEntry(id=entry.id, category=entry.category, forms=forms)
    return Lexicon(entries=entries, index=_reindex(entries))


def resolve_token(lexicon: Lexicon, surface: str):
    """All (entry, role) pairs whose form equals the surface; empty if unknown."""
    return tuple(
        (lexicon.entries[eid], role) for eid, role in lexicon.index.get(surface, ())
    )


def remove_entry(lexicon: Lexicon, entry_id: str, statements: Iterable = ()) -> Lexicon:
    """Remove a word unless any statement still uses one of its forms.

    ``statements`` is an iterable of (statement id, token surfaces) pairs,
    matched against the entry's normalized forms.
    """
    entry = lexicon.entry(entry_id)
    forms = set(entry.forms.values())
    users = [sid for sid, surfaces in statements if forms & set(surfaces)]
    if users:
        raise InUseError(users)
    entries = dict(lexicon.entries)
    del entries[entry_id]
    return Lexicon(entries=entries, index=_reindex(entries))


def article_for(word: str) -> str:
    """Indefinite article ("a" or "an") for a noun surface.

    Orthographic vowel rule with the common consonant-sound exceptions
    (university, European, one-off, ...). Drives both the grammar's
    determiner agreement and generated-sentence rendering.
    """
    lowered = word.lower()
    if lowered.startswith(("uni", "use", "usa", "eur", "one", "ubi", "uti")):
        return "a"
    return "an" if lowered[:1] in "aeiou" else "a"
