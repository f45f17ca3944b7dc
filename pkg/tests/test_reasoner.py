import random

import pytest

from cnlwiki import dl
from cnlwiki.errors import (
    InconsistentKbError,
    ResourceLimitError,
    TooLargeError,
    UnknownIndividualError,
)
from cnlwiki.oracle import (
    finite_model_check,
    oracle_realize,
    oracle_retrieve,
    prop_sat,
)
from cnlwiki.reasoner import (
    check_consistency,
    classify,
    is_subsumed,
    realize,
    retrieve,
)

from helpers import random_kb

N, R = dl.Named, dl.Role


def kb_of(axioms, **signature):
    return dl.KbSnapshot.from_axioms(axioms, **signature)


class TestConsistency:
    def test_empty_kb(self):
        assert check_consistency(kb_of([]))

    def test_direct_clash(self):
        kb = kb_of(
            [
                dl.ClassAssertion(N("city"), "Zurich"),
                dl.SubClassOf(N("city"), dl.Complement(N("country"))),
                dl.ClassAssertion(N("country"), "Zurich"),
            ]
        )
        assert not check_consistency(kb)
        assert finite_model_check(kb) is None

    def test_exists_forall_clash(self):
        kb = kb_of(
            [
                dl.ClassAssertion(
                    dl.Intersection(
                        (
                            dl.SomeValuesFrom(R("r"), N("c")),
                            dl.AllValuesFrom(R("r"), dl.Complement(N("c"))),
                        )
                    ),
                    "a",
                )
            ]
        )
        assert not check_consistency(kb)

    def test_cardinality_merge_conflict(self):
        kb = kb_of(
            [
                dl.ClassAssertion(dl.MinCard(2, R("r"), N("c")), "a"),
                dl.ClassAssertion(dl.MaxCard(1, R("r"), N("c")), "a"),
            ]
        )
        assert not check_consistency(kb)

    def test_una_blocks_merging_named(self):
        kb = kb_of(
            [
                dl.PropertyAssertion(R("r"), "a", "b"),
                dl.PropertyAssertion(R("r"), "a", "c"),
                dl.ClassAssertion(dl.MaxCard(1, R("r"), dl.Top()), "a"),
            ]
        )
        assert not check_consistency(kb)

    def test_blocking_terminates_cycles(self):
        kb = kb_of(
            [
                dl.SubClassOf(N("human"), dl.SomeValuesFrom(R("parent"), N("human"))),
                dl.ClassAssertion(N("human"), "adam"),
            ]
        )
        assert check_consistency(kb)

    def test_resource_limit(self):
        kb = kb_of(
            [
                dl.SubClassOf(dl.Top(), dl.SomeValuesFrom(R("r"), N("c"))),
                dl.SubClassOf(N("c"), dl.MinCard(2, R("s"), dl.Complement(N("c")))),
                dl.ClassAssertion(N("c"), "a"),
            ]
        )
        with pytest.raises(ResourceLimitError):
            check_consistency(kb, node_cap=3)

    def test_monotonicity_of_inconsistency(self):
        rng = random.Random(11)
        seen_inconsistent = 0
        while seen_inconsistent < 25:
            kb = random_kb(rng)
            if check_consistency(kb):
                continue
            seen_inconsistent += 1
            extended = kb.with_axioms([dl.ClassAssertion(N("A"), sorted(kb.individuals)[0])])
            assert not check_consistency(extended)


class TestSubsumption:
    def test_reflexive(self):
        kb = kb_of([], classes=["c"])
        assert is_subsumed(kb, N("c"), N("c"))

    def test_told_edge(self):
        kb = kb_of([dl.SubClassOf(N("country"), N("area"))])
        assert is_subsumed(kb, N("country"), N("area"))
        assert not is_subsumed(kb, N("area"), N("country"))

    def test_unlinked_classes(self):
        kb = kb_of([dl.SubClassOf(N("country"), N("area"))], classes=["city"])
        assert not is_subsumed(kb, N("country"), N("city"))

    def test_complex_subsumption(self):
        kb = kb_of(
            [
                dl.SubClassOf(
                    dl.Intersection((N("person"), dl.SomeValuesFrom(R("write"), N("book")))),
                    N("author"),
                ),
                dl.SubClassOf(N("novelist"), N("person")),
                dl.SubClassOf(N("novelist"), dl.SomeValuesFrom(R("write"), N("book"))),
            ]
        )
        assert is_subsumed(kb, N("novelist"), N("author"))


class TestClassify:
    def test_two_children(self):
        kb = kb_of(
            [
                dl.SubClassOf(N("country"), N("area")),
                dl.SubClassOf(N("canton"), N("area")),
            ]
        )
        h = classify(kb)
        assert set(h.direct_subs["area"]) == {"country", "canton"}
        assert set(h.direct_supers["country"]) == {"area"}

    def test_transitive_reduction(self):
        kb = kb_of(
            [
                dl.SubClassOf(N("city"), N("settlement")),
                dl.SubClassOf(N("settlement"), N("area")),
                dl.SubClassOf(N("city"), N("area")),  # redundant told edge
            ]
        )
        h = classify(kb)
        assert set(h.direct_supers["city"]) == {"settlement"}

    def test_flat_hierarchy(self):
        kb = kb_of([], classes=["a", "b"])
        h = classify(kb)
        assert h.direct_supers["a"] == frozenset()
        assert h.direct_subs["a"] == frozenset()

    def test_equivalence_cycle(self):
        kb = kb_of([dl.SubClassOf(N("a"), N("b")), dl.SubClassOf(N("b"), N("a"))])
        h = classify(kb)
        assert set(h.equivalents["a"]) == {"a", "b"}

    def test_inconsistent_kb_rejected(self):
        kb = kb_of(
            [
                dl.ClassAssertion(N("a"), "x"),
                dl.ClassAssertion(dl.Complement(N("a")), "x"),
            ]
        )
        with pytest.raises(InconsistentKbError):
            classify(kb)

    def test_agrees_with_is_subsumed(self):
        rng = random.Random(5)
        checked = 0
        while checked < 10:
            kb = random_kb(rng)
            if not check_consistency(kb):
                continue
            checked += 1
            h = classify(kb)
            for c in h.classes:
                for d in h.classes:
                    if c == d:
                        continue
                    entailed = is_subsumed(kb, N(c), N(d))
                    in_h = (
                        d in h.equivalents[c]
                        or d in h.direct_supers[c]
                        or any(
                            is_subsumed(kb, N(e), N(d)) for e in h.direct_supers[c]
                        )
                    )
                    assert entailed == in_h, (c, d)


class TestRealizeRetrieve:
    def test_realize_direct(self):
        kb = kb_of([dl.ClassAssertion(N("city"), "Zurich")])
        assert realize(kb, "Zurich") == {"city"}

    def test_realize_inferred(self):
        kb = kb_of(
            [
                dl.ClassAssertion(N("city"), "Zurich"),
                dl.SubClassOf(N("city"), N("location")),
            ]
        )
        assert realize(kb, "Zurich") == {"city", "location"}
        assert oracle_realize(kb, "Zurich") == {"city", "location"}

    def test_realize_unknown(self):
        kb = kb_of([dl.ClassAssertion(N("city"), "Zurich")])
        with pytest.raises(UnknownIndividualError):
            realize(kb, "Atlantis")

    def test_retrieve_toy_geography(self):
        kb = kb_of(
            [
                dl.PropertyAssertion(R("border"), "Germany", "Switzerland"),
                dl.PropertyAssertion(R("border"), "Italy", "Switzerland"),
                dl.ClassAssertion(N("country"), "Austria"),
            ]
        )
        concept = dl.SomeValuesFrom(R("border"), dl.OneOf("Switzerland"))
        assert retrieve(kb, concept) == {"Germany", "Italy"}
        assert oracle_retrieve(kb, concept) == {"Germany", "Italy"}

    def test_retrieve_unsatisfiable_concept(self):
        kb = kb_of([dl.ClassAssertion(N("city"), "Zurich")])
        nothing = dl.Intersection((N("city"), dl.Complement(N("city"))))
        assert retrieve(kb, nothing) == set()

    def test_retrieve_respects_subproperty(self):
        kb = kb_of(
            [
                dl.SubPropertyOf(R("contain"), R("larger_than")),
                dl.PropertyAssertion(R("contain"), "A", "B"),
            ]
        )
        concept = dl.SomeValuesFrom(R("larger_than"), dl.OneOf("B"))
        assert retrieve(kb, concept) == {"A"}
        assert oracle_retrieve(kb, concept) == {"A"}

    def test_realize_retrieve_duality(self):
        kb = kb_of(
            [
                dl.ClassAssertion(N("city"), "Zurich"),
                dl.ClassAssertion(N("city"), "Bern"),
                dl.ClassAssertion(N("country"), "Switzerland"),
                dl.SubClassOf(N("city"), N("location")),
            ]
        )
        for c in sorted(kb.classes):
            members = retrieve(kb, N(c))
            for i in sorted(kb.individuals):
                assert (i in members) == (c in realize(kb, i))


class TestFiniteModelOracle:
    def test_empty_kb_singleton_model(self):
        model = finite_model_check(kb_of([]), 1)
        assert model is not None and model.domain == 1

    def test_author_entailment(self):
        kb = kb_of(
            [
                dl.SubClassOf(
                    dl.Intersection((N("person"), dl.SomeValuesFrom(R("write"), N("book")))),
                    N("author"),
                ),
                dl.PropertyAssertion(R("write"), "John", "Book1"),
                dl.ClassAssertion(N("person"), "John"),
                dl.ClassAssertion(N("book"), "Book1"),
            ]
        )
        refuted = kb.with_axioms([dl.ClassAssertion(dl.Complement(N("author")), "John")])
        assert finite_model_check(refuted) is None
        assert not check_consistency(refuted)

    def test_domain_bound_enforced(self):
        with pytest.raises(TooLargeError):
            finite_model_check(kb_of([]), 9)

    def test_model_satisfies_assertions(self):
        kb = kb_of(
            [
                dl.ClassAssertion(N("city"), "Zurich"),
                dl.PropertyAssertion(R("border"), "Zurich", "Bern"),
            ]
        )
        model = finite_model_check(kb)
        zurich = model.individual_map["Zurich"]
        bern = model.individual_map["Bern"]
        assert zurich in model.classes["city"]
        assert (zurich, bern) in model.roles["border"]

    def test_prop_sat_basics(self):
        v = ("v", "x")
        assert prop_sat(("and", (v, ("not", v)))) is None
        hit = prop_sat(("or", (v, ("not", v))))
        assert hit is not None


class TestOracleAgreement:
    def test_random_kbs_sample(self):
        # the full 500-instance run lives in the acceptance suite
        rng = random.Random(123)
        for _ in range(60):
            kb = random_kb(rng)
            assert check_consistency(kb) == (finite_model_check(kb, 4) is not None)
