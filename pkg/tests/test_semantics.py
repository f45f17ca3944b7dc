import pytest

from cnlwiki import dl
from cnlwiki.errors import (
    InaccessibleAntecedentError,
    UnresolvedAnaphorError,
    UnsupportedQuestionError,
)
from cnlwiki.grammar import render_tokens, tokenize
from cnlwiki.logic import (
    Drs,
    FAnd,
    FAtom,
    FNot,
    FQuant,
    drs_to_fol,
    render_fol,
)
from cnlwiki.oracle import axioms_to_fol, fol_equivalent
from cnlwiki.semantics import (
    ClassQuery,
    IndividualQuery,
    InOwl,
    OutsideOwl,
    build_drs,
    map_to_owl,
    suggest_every,
    translate_question,
)

from helpers import build_grammar, name, noun, verb


def drs_of(grammar, lexicon, text):
    return build_drs(grammar.parse(tokenize(text, lexicon)), lexicon)


def fol_text(grammar, lexicon, text):
    return render_fol(drs_to_fol(drs_of(grammar, lexicon, text)))


class TestBuildDrs:
    def test_author_sentence_box_shape(self, core_grammar, core_lexicon):
        drs = drs_of(core_grammar, core_lexicon, "Every person who writes a book is an author.")
        assert drs.refs == []
        imp = drs.conds[0]
        assert [r for r in imp.antecedent.refs] == ["v1", "v2"]
        preds = [c.pred for c in imp.antecedent.conds]
        assert preds == ["person", "write", "book"]
        assert [c.pred for c in imp.consequent.conds] == ["author"]

    def test_simple_assertion(self, core_grammar, core_lexicon):
        drs = drs_of(core_grammar, core_lexicon, "Zurich is a city.")
        assert fol_text(core_grammar, core_lexicon, "Zurich is a city.") == "city(Zurich)"
        assert drs.refs == []

    def test_cross_sentence_pronoun_rejected(self, core_grammar, core_lexicon):
        # anaphora is scoped to one sentence: a dangling pronoun has no antecedent
        with pytest.raises(UnresolvedAnaphorError):
            drs_of(core_grammar, core_lexicon, "It borders Zurich.")

    def test_antecedent_inside_negation_inaccessible(self, core_grammar, core_lexicon):
        with pytest.raises(InaccessibleAntecedentError):
            drs_of(
                core_grammar,
                core_lexicon,
                "If a man does not own a car then the car is a thing."
                .replace("thing", "city"),
            )

    def test_definite_resolves_to_nearest(self, core_grammar, core_lexicon):
        text = ("If X is a student and a professor knows X then the professor hates X"
                " or likes X or is indifferent_to X.")
        fol = fol_text(core_grammar, core_lexicon, text)
        assert fol == (
            "forall A forall B (student(A) & professor(B) & know(B,A) -> "
            "hate(B,A) | like(B,A) | indifferent_to(B,A))"
        )

    def test_variable_apposition(self, core_grammar, core_lexicon):
        fol = fol_text(core_grammar, core_lexicon, "If somebody X likes Y then X does not hate Y.")
        assert fol == "forall A forall B (like(A,B) -> ~hate(A,B))"

    def test_abbreviation_transparency(self, core_grammar, core_lexicon):
        from cnlwiki.lexicon import set_abbreviation
        from cnlwiki.grammar import Grammar

        lex = set_abbreviation(core_lexicon, "Switzerland", "CH")
        grammar = Grammar(lex)
        long_drs = drs_of(grammar, lex, "Switzerland is a country.")
        short_drs = drs_of(grammar, lex, "CH is a country.")
        assert long_drs == short_drs


class TestDrsToFol:
    def test_author_formula_exact(self, core_grammar, core_lexicon):
        assert fol_text(
            core_grammar, core_lexicon, "Every person who writes a book is an author."
        ) == "forall A forall B (person(A) & write(A,B) & book(B) -> author(A))"

    def test_no_student_formula(self, core_grammar, core_lexicon):
        fol = drs_to_fol(drs_of(core_grammar, core_lexicon, "No student hates a professor."))
        assert render_fol(fol) == "forall A (student(A) -> ~exists B (professor(B) & hate(A,B)))"
        # equivalent to the flat negated-existential reading
        flat = FNot(
            FQuant(
                "exists",
                "A",
                FQuant(
                    "exists",
                    "B",
                    FAnd(
                        (
                            FAtom("student", ("A",), ("var",)),
                            FAtom("professor", ("B",), ("var",)),
                            FAtom("hate", ("A", "B"), ("var", "var")),
                        )
                    ),
                ),
            )
        )
        assert fol_equivalent(fol, flat, max_domain=3)

    def test_closed_formulas(self, core_grammar, core_lexicon):
        for text in [
            "A student attends a university.",
            "Every lecturer is a professor or is an assistant.",
            "At least 2 students attend a lecture.",
        ]:
            fol = drs_to_fol(drs_of(core_grammar, core_lexicon, text))
            from cnlwiki.logic import Interpretation, eval_fol

            # closed formulas evaluate without an environment
            interp = Interpretation(domain=2, unary={}, binary={}, consts={
                "Zurich": 0, "Switzerland": 0, "Germany": 0})
            assert eval_fol(fol, interp) in (True, False)


class TestMapToOwl:
    def test_author_axiom(self, core_grammar, core_lexicon):
        drs = drs_of(core_grammar, core_lexicon, "Every person who writes a book is an author.")
        ex = map_to_owl(drs)
        assert ex == InOwl(
            (
                dl.SubClassOf(
                    dl.Intersection(
                        (
                            dl.Named("person"),
                            dl.SomeValuesFrom(dl.Role("write"), dl.Named("book")),
                        )
                    ),
                    dl.Named("author"),
                ),
            )
        )

    def test_red_triangle_sentence(self, core_grammar, core_lexicon):
        text = ("If X is a student and a professor knows X then the professor hates X"
                " or likes X or is indifferent_to X.")
        ex = map_to_owl(drs_of(core_grammar, core_lexicon, text))
        assert isinstance(ex, OutsideOwl)

    def test_subproperty_pattern(self, core_grammar, core_lexicon):
        drs = drs_of(core_grammar, core_lexicon, "If X contains Y then X is larger_than Y.")
        ex = map_to_owl(drs)
        assert ex == InOwl((dl.SubPropertyOf(dl.Role("contain"), dl.Role("larger_than")),))
        # FOL reading of the axiom is equivalent to the sentence translation
        assert fol_equivalent(drs_to_fol(drs), axioms_to_fol(ex.axioms), max_domain=3)

    def test_passive_cardinality(self, core_grammar, core_lexicon):
        ex = map_to_owl(
            drs_of(core_grammar, core_lexicon, "Every lecture is attended by at least 3 students.")
        )
        assert ex == InOwl(
            (
                dl.SubClassOf(
                    dl.Named("lecture"),
                    dl.MinCard(3, dl.Role("attend", inverse=True), dl.Named("student")),
                ),
            )
        )

    def test_existential_without_names_is_outside(self, core_grammar, core_lexicon):
        ex = map_to_owl(drs_of(core_grammar, core_lexicon, "A student attends a university."))
        assert isinstance(ex, OutsideOwl)

    def test_named_subject_assertion(self, core_grammar, core_lexicon):
        ex = map_to_owl(drs_of(core_grammar, core_lexicon, "Zurich borders a country."))
        assert ex == InOwl(
            (
                dl.ClassAssertion(
                    dl.SomeValuesFrom(dl.Role("border"), dl.Named("country")), "Zurich"
                ),
            )
        )

    def test_conjoined_assertions_split(self, core_grammar, core_lexicon):
        ex = map_to_owl(drs_of(core_grammar, core_lexicon, "Zurich is a city and borders Germany."))
        assert ex == InOwl(
            (
                dl.ClassAssertion(dl.Named("city"), "Zurich"),
                dl.PropertyAssertion(dl.Role("border"), "Zurich", "Germany"),
            )
        )

    def test_proper_name_in_universal_is_outside(self, core_grammar, core_lexicon):
        ex = map_to_owl(drs_of(core_grammar, core_lexicon, "Every city borders Switzerland."))
        assert isinstance(ex, OutsideOwl)

    def test_universal_object_quantifier_is_outside(self, core_grammar, core_lexicon):
        ex = map_to_owl(drs_of(core_grammar, core_lexicon, "Every person likes every city."))
        assert isinstance(ex, OutsideOwl)

    def test_negated_assertion(self, core_grammar, core_lexicon):
        ex = map_to_owl(drs_of(core_grammar, core_lexicon, "Zurich is not a country."))
        assert ex == InOwl((dl.ClassAssertion(dl.Complement(dl.Named("country")), "Zurich"),))


class TestOwlFaithfulness:
    def test_enumerated_sentences_agree_with_axioms(self):
        # every expressible sentence's axioms read back as an equivalent
        # first-order statement; finite-model equivalence over domains <= 3
        words = [
            noun("city", "cities"),
            noun("area", "areas"),
            name("Zurich"),
            verb("borders", "border", "bordered"),
        ]
        grammar = build_grammar(words, max_number=2)
        lexicon = grammar.lexicon
        checked = set()
        in_owl = outside = 0
        for sent in grammar.enumerate_sentences(8, representatives=True):
            tree = grammar.parse(sent)
            if tree.is_question:
                continue
            try:
                drs = build_drs(tree, lexicon)
            except (UnresolvedAnaphorError, InaccessibleAntecedentError):
                continue
            ex = map_to_owl(drs)
            if isinstance(ex, OutsideOwl):
                outside += 1
                continue
            in_owl += 1
            sentence_fol = drs_to_fol(drs)
            axiom_fol = axioms_to_fol(ex.axioms)
            key = (render_fol(sentence_fol), render_fol(axiom_fol))
            if key in checked:
                continue
            checked.add(key)
            assert fol_equivalent(sentence_fol, axiom_fol, max_domain=3), render_tokens(sent)
        assert in_owl > 50 and outside > 50  # both sides of the split exercised


class TestQuestions:
    def test_what_borders_switzerland(self, core_grammar, core_lexicon):
        q = translate_question(core_grammar.parse(tokenize("What borders Switzerland ?", core_lexicon)))
        assert q == ClassQuery(dl.SomeValuesFrom(dl.Role("border"), dl.OneOf("Switzerland")))

    def test_which_countries(self, core_grammar, core_lexicon):
        q = translate_question(
            core_grammar.parse(tokenize("Which countries border Switzerland ?", core_lexicon))
        )
        assert q == ClassQuery(
            dl.Intersection(
                (
                    dl.Named("country"),
                    dl.SomeValuesFrom(dl.Role("border"), dl.OneOf("Switzerland")),
                )
            )
        )

    def test_individual_query(self, core_grammar, core_lexicon):
        q = translate_question(core_grammar.parse(tokenize("What is Zurich ?", core_lexicon)))
        assert q == IndividualQuery("Zurich")

    def test_declarative_rejected(self, core_grammar, core_lexicon):
        with pytest.raises(UnsupportedQuestionError):
            translate_question(core_grammar.parse(tokenize("Zurich is a city.", core_lexicon)))


class TestSuggestEvery:
    def test_rewrites_initial_a(self, core_grammar, core_lexicon):
        tokens = tokenize("A student attends a university.", core_lexicon)
        rewritten = suggest_every(tokens, core_grammar)
        assert render_tokens(rewritten) == "Every student attends a university."

    def test_rewrites_initial_an(self, core_grammar, core_lexicon):
        tokens = tokenize("An author writes a book.", core_lexicon)
        assert render_tokens(suggest_every(tokens, core_grammar)) == "Every author writes a book."

    def test_every_sentence_untouched(self, core_grammar, core_lexicon):
        assert suggest_every(tokenize("Every student is a person.", core_lexicon), core_grammar) is None

    def test_proper_name_untouched(self, core_grammar, core_lexicon):
        assert suggest_every(tokenize("Zurich is a city.", core_lexicon), core_grammar) is None

    def test_property_over_enumeration(self, tiny_grammar):
        # every accepted declarative starting with a/an rewrites and re-parses
        for sent in tiny_grammar.enumerate_sentences(6):
            if sent[0].surface not in ("a", "an"):
                continue
            rewritten = suggest_every(list(sent), tiny_grammar)
            assert rewritten is not None
            assert rewritten[0].surface == "every"
            assert [t.surface for t in rewritten[1:]] == [t.surface for t in sent[1:]]
