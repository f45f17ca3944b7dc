import pytest

from cnlwiki import wiki
from cnlwiki.grammar import tokenize
from cnlwiki.stats import analyze_corpus, classify_complexity

from helpers import CORE_WORDS, GEO_WORDS, build_kb, build_lexicon


COMPLEX_EXAMPLES = [
    "Every lecture is attended by at least 3 students.",
    "Every lecturer is a professor or is an assistant.",
    "Every professor is employed by a university.",
    "If X contains Y then X is larger_than Y.",
    "If somebody X likes Y then X does not hate Y.",
    "If X is a student and a professor knows X then the professor hates X"
    " or likes X or is indifferent_to X.",
]


class TestClassifyComplexity:
    @pytest.mark.parametrize("text", COMPLEX_EXAMPLES)
    def test_complex_examples(self, core_lexicon, text):
        assert classify_complexity(tokenize(text, core_lexicon)) == "Complex"

    @pytest.mark.parametrize(
        "text",
        ["Zurich is a city.", "Germany borders Switzerland.", "A student writes a book."],
    )
    def test_simple_examples(self, core_lexicon, text):
        assert classify_complexity(tokenize(text, core_lexicon)) == "Simple"

    def test_depends_only_on_tokens(self, core_lexicon):
        # lexical material does not matter, only function words
        a = tokenize("No student hates a professor.", core_lexicon)
        b = tokenize("No lecture contains a book.", core_lexicon)
        assert classify_complexity(a) == classify_complexity(b) == "Complex"


class TestAnalyzeCorpus:
    def test_empty_kb_is_all_zero(self):
        stats = analyze_corpus(wiki.new_kb())
        assert stats.sentences == 0 and stats.words == 0
        assert stats.complex_ratio == 0.0 and stats.sentences_per_word == 0.0

    def test_half_complex(self):
        kb, _ = build_kb(
            GEO_WORDS,
            [
                ("country", "Every country is an area."),        # complex
                ("country", "No city is a country."),            # complex
                ("Germany", "Germany is a country."),            # simple
                ("Germany", "Germany borders Switzerland."),     # simple
            ],
        )
        stats = analyze_corpus(kb)
        assert stats.correct == 4 and stats.correct_complex == 2
        assert stats.complex_ratio == 0.5

    def test_toy_geography_ratio(self):
        # 10 sentences over 8 words: S / w = 1.25
        words = [w for w in GEO_WORDS if w[1] not in ({"long": "Austria"},)][:8]
        sentences = [
            ("country", "Every country is an area."),
            ("country", "Every city is an area."),
            ("Germany", "Germany is a country."),
            ("Italy", "Italy is a country."),
            ("Switzerland", "Switzerland is a country."),
            ("Germany", "Germany borders Switzerland."),
            ("Italy", "Italy borders Switzerland."),
            ("Germany", "Germany borders Italy."),
            ("Zurich", "Zurich borders Germany."),
            ("Zurich", "Zurich is a city."),
        ]
        kb, _ = build_kb(words, sentences)
        stats = analyze_corpus(kb)
        assert stats.sentences == 10 and stats.words == 8
        assert stats.sentences_per_word == 1.25

    def test_word_counts_by_category(self):
        kb, _ = build_kb(CORE_WORDS)
        stats = analyze_corpus(kb)
        assert stats.words == len(CORE_WORDS)
        assert stats.proper_names == 3
        assert stats.nouns == 14
        assert stats.verbs == 9
        assert stats.of_constructs == 1
        assert stats.adjectives == 3
        assert stats.relations == 13
        assert stats.words == stats.proper_names + stats.nouns + stats.relations
        assert stats.relations == stats.verbs + stats.of_constructs + stats.adjectives

    def test_initial_a_and_states(self):
        kb, _ = build_kb(
            CORE_WORDS,
            [
                ("student", "A student attends a university."),   # S^e and non-OWL
                ("student", "Every student is a person."),
            ],
        )
        stats = analyze_corpus(kb, parse_failures=3)
        assert stats.sentences == 2
        assert stats.initial_a == 1
        assert stats.correct == 1  # the non-OWL sentence is not integrated
        assert stats.parse_failures == 3
        assert stats.misclassified_words == 0

    def test_questions_not_counted(self):
        kb, _ = build_kb(GEO_WORDS, [("country", "Every country is an area.")])
        kb, _ = wiki.add_statement(kb, "Switzerland", "What borders Switzerland ?")
        assert analyze_corpus(kb).sentences == 1
