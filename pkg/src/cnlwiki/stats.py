"""Corpus analyzer: sentence complexity taxonomy and per-category word counts.

Complexity is decided on the token sequence alone: a sentence is complex when
it contains a negation, an implication, a disjunction, or a cardinality
restriction. Correctness in the human-judged sense is not computable here;
the analyzer substitutes mechanical proxies (integrated = correct) and
documents that difference in its field names.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lexicon import WordCategory

_NEGATION_STARTS = {"no", "not"}
_IMPLICATION_STARTS = {"every", "if"}
_CARDINALITY_STARTS = {"at", "exactly", "more", "less"}


def classify_complexity(tokens) -> str:
    """"Complex" when negation/implication/disjunction/cardinality occurs."""
    for t in tokens:
        if t.kind != "word":
            continue
        s = t.surface
        if (
            s in _NEGATION_STARTS
            or s in _IMPLICATION_STARTS
            or s == "or"
            or s in _CARDINALITY_STARTS
        ):
            return "Complex"
    return "Simple"


@dataclass
class CorpusStats:
    sentences: int = 0  # S: declarative sentences stored
    correct: int = 0  # S+ proxy: integrated sentences
    correct_complex: int = 0  # S+_x: complex among the integrated
    initial_a: int = 0  # S^e: sentences starting with "a"/"an"
    misclassified_words: int = 0  # S^w: not auto-detectable, always 0
    parse_failures: int = 0  # S-: failed lines from a batch import
    words: int = 0  # w
    proper_names: int = 0  # w_p
    nouns: int = 0  # w_n
    relations: int = 0  # w_r = verbs + of-constructs + adjectives
    verbs: int = 0  # w_v
    of_constructs: int = 0  # w_o
    adjectives: int = 0  # w_a

    @property
    def complex_ratio(self):
        """S+_x / S+"""
        return self.correct_complex / self.correct if self.correct else 0.0

    @property
    def sentences_per_word(self):
        """S / w"""
        return self.sentences / self.words if self.words else 0.0

    def as_dict(self):
        return {
            "sentences": self.sentences,
            "correct": self.correct,
            "correct_complex": self.correct_complex,
            "initial_a": self.initial_a,
            "misclassified_words": self.misclassified_words,
            "parse_failures": self.parse_failures,
            "words": self.words,
            "proper_names": self.proper_names,
            "nouns": self.nouns,
            "relations": self.relations,
            "verbs": self.verbs,
            "of_constructs": self.of_constructs,
            "adjectives": self.adjectives,
            "complex_ratio": self.complex_ratio,
            "sentences_per_word": self.sentences_per_word,
        }


def analyze_corpus(kb, parse_failures: int = 0) -> CorpusStats:
    """Counts over the current wiki content; deterministic."""
    stats = CorpusStats(parse_failures=parse_failures)
    for entry in kb.lexicon.entries.values():
        stats.words += 1
        if entry.category is WordCategory.PROPER_NAME:
            stats.proper_names += 1
        elif entry.category is WordCategory.NOUN:
            stats.nouns += 1
        elif entry.category is WordCategory.TRANSITIVE_VERB:
            stats.relations += 1
            stats.verbs += 1
        elif entry.category is WordCategory.OF_CONSTRUCT:
            stats.relations += 1
            stats.of_constructs += 1
        else:
            stats.relations += 1
            stats.adjectives += 1
    for st in kb.statements.values():
        if st.kind != "sentence":
            continue
        stats.sentences += 1
        first = st.tokens[0]
        if first.kind == "word" and first.surface in ("a", "an"):
            stats.initial_a += 1
        if st.state == "integrated":
            stats.correct += 1
            if classify_complexity(st.tokens) == "Complex":
                stats.correct_complex += 1
    return stats
