"""From parse trees to logic: discourse boxes, OWL mapping, questions.

build_drs walks a declarative parse tree and produces a resolved Drs: fresh
referents for indefinites, implications for every/no/if-then, and anaphora
(definite noun phrases, pronouns, variables) resolved against accessible
referents within the sentence.

map_to_owl classifies each box as expressible or not: assertions about named
individuals and universal statements whose condition graph is a tree become
axioms; anything else is flagged with a reason (the wiki's red-triangle
marker). translate_question turns interrogative trees into retrieval or
realization queries over the same concept language.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Set, Tuple, Union

from . import dl
from .errors import (
    InaccessibleAntecedentError,
    UnresolvedAnaphorError,
    UnsupportedQuestionError,
)
from .grammar import Grammar, Node, Token
from .logic import Alt, Atom, Card, Drs, Imp, Ind, Neg, Ref, individuals_in


@dataclass(frozen=True)
class InOwl:
    axioms: Tuple[dl.Axiom, ...]


@dataclass(frozen=True)
class OutsideOwl:
    reason: str


Expressibility = Union[InOwl, OutsideOwl]


@dataclass(frozen=True)
class IndividualQuery:
    individual: str


@dataclass(frozen=True)
class ClassQuery:
    concept: dl.Concept


Query = Union[IndividualQuery, ClassQuery]


@dataclass
class _Candidate:
    term: object  # Ref or Ind
    nouns: Set[str] = field(default_factory=set)
    label: Optional[str] = None


class _Builder:
    def __init__(self, tree: Node):
        self.counter = 0
        self.scopes: List[List[_Candidate]] = [[]]
        self.all_candidates: List[_Candidate] = []
        self.positions = {}
        for i, leaf in enumerate(_leaf_objects(tree)):
            self.positions[id(leaf)] = i

    # -- scope management ---------------------------------------------------

    def fresh(self) -> str:
        self.counter += 1
        return f"v{self.counter}"

    def mark(self):
        return len(self.scopes)

    def push(self):
        self.scopes.append([])

    def restore(self, mark):
        del self.scopes[mark:]

    def add_candidate(self, cand: _Candidate):
        self.scopes[-1].append(cand)
        self.all_candidates.append(cand)

    def accessible(self):
        for scope in reversed(self.scopes):
            for cand in reversed(scope):
                yield cand

    def pos(self, leaf):
        return self.positions[id(leaf)]

    # -- statements ----------------------------------------------------------

    def decl(self, node: Node, box: Drs):
        if node.rule == "decl_simple":
            self.statement(node.children[0], box)
            return
        # if CSTAT then CSTAT
        ant, cons = Drs(), Drs()
        box.conds.append(Imp(ant, cons))
        m = self.mark()
        self.push()
        self.cstat(node.children[1], ant)
        self.cstat(node.children[3], cons)
        self.restore(m)

    def cstat(self, node: Node, box: Drs):
        if node.rule == "cstat_one":
            self.ands(node.children[0], box)
            return
        left, right = Drs(), Drs()
        box.conds.append(Alt(left, right))
        m = self.mark()
        self.push()
        self.ands(node.children[0], left)
        self.restore(m)
        self.push()
        self.cstat(node.children[2], right)
        self.restore(m)

    def ands(self, node: Node, box: Drs):
        self.statement(node.children[0], box)
        if node.rule == "ands_and":
            self.ands(node.children[2], box)

    def statement(self, node: Node, box: Drs):
        m = self.mark()
        term, nucleus = self.np(node.children[0], box)
        self.vp(node.children[1], term, nucleus)
        self.restore(m)

    # -- noun phrases ---------------------------------------------------------

    def np(self, node: Node, box: Drs):
        """Evaluate a noun phrase; returns (term, nucleus box for dependents)."""
        rule = node.rule
        if rule in ("obj_sg", "obj_pl"):
            return self.np(node.children[0], box)

        if rule in ("npsg_a", "npsg_an", "nppl_some"):
            ref = self.fresh()
            box.refs.append(ref)
            cand = _Candidate(Ref(ref))
            self.add_candidate(cand)
            self.apply_n1(node.children[1], Ref(ref), box, cand)
            return Ref(ref), box

        if rule in ("npsg_every", "npsg_no"):
            ant, cons = Drs(), Drs()
            box.conds.append(Imp(ant, cons))
            if rule == "npsg_no":
                inner = Drs()
                cons.conds.append(Neg(inner))
                nucleus = inner
            else:
                nucleus = cons
            self.push()
            ref = self.fresh()
            ant.refs.append(ref)
            cand = _Candidate(Ref(ref))
            self.add_candidate(cand)
            self.apply_n1(node.children[1], Ref(ref), ant, cand)
            return Ref(ref), nucleus

        if rule == "npsg_the":
            head = _head_noun(node.children[1])
            leaf = node.children[0]
            for cand in self.accessible():
                if head in cand.nouns:
                    self.apply_n1(
                        node.children[1], cand.term, box, cand, include_head=False
                    )
                    return cand.term, box
            if any(head in c.nouns for c in self.all_candidates):
                raise InaccessibleAntecedentError(self.pos(leaf), "the " + head)
            raise UnresolvedAnaphorError(self.pos(leaf), "the " + head)

        if rule in ("npsg_card1", "nppl_card"):
            op, n = _card_value(node.children[0])
            inner = Drs()
            ref = self.fresh()
            inner.refs.append(ref)
            box.conds.append(Card(op, n, ref, inner))
            self.push()
            cand = _Candidate(Ref(ref))
            self.add_candidate(cand)
            self.apply_n1(node.children[1], Ref(ref), inner, cand)
            return Ref(ref), inner

        if rule == "npsg_pn":
            term = Ind(node.children[0].token.entry_id)
            self.add_candidate(_Candidate(term))
            return term, box

        if rule == "npsg_var":
            leaf = node.children[0]
            label = leaf.token.surface
            for cand in self.accessible():
                if cand.label == label:
                    return cand.term, box
            if any(c.label == label for c in self.all_candidates):
                raise InaccessibleAntecedentError(self.pos(leaf), label)
            ref = self.fresh()
            box.refs.append(ref)
            self.add_candidate(_Candidate(Ref(ref), label=label))
            return Ref(ref), box

        if rule in (
            "npsg_somebody",
            "npsg_something",
            "npsg_somebody_var",
            "npsg_something_var",
        ):
            label = None
            if rule.endswith("_var"):
                label = node.children[1].token.surface
            ref = self.fresh()
            box.refs.append(ref)
            self.add_candidate(_Candidate(Ref(ref), label=label))
            return Ref(ref), box

        if rule in ("npsg_he", "npsg_she", "npsg_it"):
            leaf = node.children[0]
            for cand in self.accessible():
                return cand.term, box
            if self.all_candidates:
                raise InaccessibleAntecedentError(self.pos(leaf), leaf.token.surface)
            raise UnresolvedAnaphorError(self.pos(leaf), leaf.token.surface)

        raise ValueError(f"unexpected NP rule {rule}")

    def apply_n1(self, node: Node, term, box: Drs, cand, include_head=True):
        rule = node.rule
        if rule in ("n1sg_a", "n1sg_an"):
            self.apply_n1(node.children[0], term, box, cand, include_head)
            return
        if rule in ("n1sga_n", "n1sgan_n", "n1pl_n"):
            head = node.children[0].token.entry_id
            cand.nouns.add(head)
            if include_head:
                box.conds.append(Atom(head, (term,)))
            return
        if rule in ("n1sga_rel", "n1sgan_rel", "n1pl_rel"):
            head = node.children[0].token.entry_id
            cand.nouns.add(head)
            if include_head:
                box.conds.append(Atom(head, (term,)))
            self.relcl(node.children[1], term, box)
            return
        if rule in ("n1sga_of", "n1sgan_of"):
            of_id = node.children[0].token.entry_id
            cand.nouns.add(of_id)
            if not include_head:
                return
            m = self.mark()
            pre = len(box.conds)
            oterm, nucleus = self.np(node.children[2], box)
            self.place_atom(Atom(of_id, (term, oterm)), term, box, pre, nucleus)
            self.restore(m)
            return
        raise ValueError(f"unexpected N1 rule {rule}")

    def relcl(self, node: Node, term, box: Drs):
        rule = node.rule
        if rule in ("relsg_one", "relpl_one"):
            self.vp(node.children[1], term, box)
            return
        if rule in ("relsg_and", "relpl_and"):
            self.vp(node.children[1], term, box)
            self.relcl(node.children[3], term, box)
            return
        # coordinated alternatives: that VP or that ...
        left, right = Drs(), Drs()
        box.conds.append(Alt(left, right))
        m = self.mark()
        self.push()
        self.vp(node.children[1], term, left)
        self.restore(m)
        self.push()
        self.relcl(node.children[3], term, right)
        self.restore(m)

    # -- verb phrases ----------------------------------------------------------

    def vp(self, node: Node, term, box: Drs):
        rule = node.rule
        if rule in ("vpsg_one", "vppl_one", "vpandsg_one", "vpandpl_one"):
            self.vp(node.children[0], term, box)
            return
        if rule in ("vpandsg_and", "vpandpl_and"):
            self.vp(node.children[0], term, box)
            self.vp(node.children[2], term, box)
            return
        if rule in ("vpsg_or", "vppl_or"):
            left, right = Drs(), Drs()
            box.conds.append(Alt(left, right))
            m = self.mark()
            self.push()
            self.vp(node.children[0], term, left)
            self.restore(m)
            self.push()
            self.vp(node.children[2], term, right)
            self.restore(m)
            return

        if rule in ("vpatomsg_tv", "vpatompl_tv"):
            verb = node.children[0].token.entry_id
            m = self.mark()
            pre = len(box.conds)
            oterm, nucleus = self.np(node.children[1], box)
            self.place_atom(Atom(verb, (term, oterm)), term, box, pre, nucleus)
            self.restore(m)
            return
        if rule == "vpatomsg_negtv":
            verb = node.children[2].token.entry_id
            inner = Drs()
            box.conds.append(Neg(inner))
            m = self.mark()
            self.push()
            pre = len(inner.conds)
            oterm, nucleus = self.np(node.children[3], inner)
            self.place_atom(Atom(verb, (term, oterm)), term, inner, pre, nucleus)
            self.restore(m)
            return
        if rule in ("vpatomsg_cop", "vpatompl_cop"):
            self.compl(node.children[1], term, box)
            return
        if rule in ("vpatomsg_negcop", "vpatompl_negcop"):
            inner = Drs()
            box.conds.append(Neg(inner))
            m = self.mark()
            self.push()
            self.compl(node.children[2], term, inner)
            self.restore(m)
            return
        if rule in ("vpatomsg_passive", "vpatompl_passive"):
            verb = node.children[1].token.entry_id
            m = self.mark()
            pre = len(box.conds)
            oterm, nucleus = self.np(node.children[3], box)
            self.place_atom(Atom(verb, (oterm, term)), term, box, pre, nucleus)
            self.restore(m)
            return
        raise ValueError(f"unexpected VP rule {rule}")

    def compl(self, node: Node, term, box: Drs):
        rule = node.rule
        if rule in ("complsg_a", "complsg_an"):
            cand = self.find_candidate(term)
            self.apply_n1(node.children[1], term, box, cand)
            return
        if rule == "complpl_n":
            cand = self.find_candidate(term)
            self.apply_n1(node.children[0], term, box, cand)
            return
        if rule in ("complsg_adj", "complpl_adj"):
            adj = node.children[0].token.entry_id
            m = self.mark()
            pre = len(box.conds)
            oterm, nucleus = self.np(node.children[1], box)
            self.place_atom(Atom(adj, (term, oterm)), term, box, pre, nucleus)
            self.restore(m)
            return
        raise ValueError(f"unexpected complement rule {rule}")

    def place_atom(self, atom: Atom, subject, box: Drs, pre: int, nucleus: Drs):
        """Insert a relational atom in presentation order.

        When the atom lands in the box that also declares the subject
        referent, it goes right where the object phrase started (subject
        restriction, relation, object restriction); otherwise the object's
        restriction comes first and the atom is appended.
        """
        if (
            nucleus is box
            and isinstance(subject, Ref)
            and subject.name in nucleus.refs
        ):
            nucleus.conds.insert(pre, atom)
        else:
            nucleus.conds.append(atom)

    def find_candidate(self, term) -> _Candidate:
        for cand in reversed(self.all_candidates):
            if cand.term == term:
                return cand
        cand = _Candidate(term)
        self.add_candidate(cand)
        return cand


def _leaf_objects(tree: Node):
    out = []
    stack = [tree]
    while stack:
        n = stack.pop()
        if n.is_leaf:
            out.append(n)
        else:
            stack.extend(reversed(n.children))
    return out


def _head_noun(n1_node: Node) -> str:
    node = n1_node
    while node.rule in ("n1sg_a", "n1sg_an"):
        node = node.children[0]
    return node.children[0].token.entry_id


def _card_value(det_node: Node):
    num = det_node.children[-1].token.value
    kind = det_node.rule.split("_", 1)[1]
    if kind == "atleast":
        return ">=", num
    if kind == "atmost":
        return "<=", num
    if kind == "exactly":
        return "=", num
    if kind == "more":
        return ">=", num + 1
    if kind == "less":
        return "<=", num - 1
    raise ValueError(det_node.rule)


def build_drs(tree: Node, lexicon=None) -> Drs:
    """Resolved discourse box for a declarative parse tree."""
    if tree.rule != "s_decl":
        raise ValueError("build_drs expects a declarative sentence")
    builder = _Builder(tree)
    top = Drs()
    builder.decl(tree.children[0], top)
    return top


# ---------------------------------------------------------------------------
# OWL mapping
# ---------------------------------------------------------------------------

class _NotTree(Exception):
    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


def _refs_of_cond(cond, declared=frozenset()):
    """Referent names a condition touches (free w.r.t. the enclosing box)."""
    if isinstance(cond, Atom):
        return {t.name for t in cond.args if isinstance(t, Ref)} - set(declared)
    return Drs(refs=list(declared), conds=[cond]).free_refs()


def _inds_of_cond(cond):
    return set(individuals_in(Drs(conds=[cond])))


def _concept_about(root, conds, avail: Set[str], allow_nominals: bool) -> dl.Concept:
    """Express a condition set as a concept describing ``root``.

    ``avail`` holds the referents available for subtree nodes; each may be
    used exactly once (tree shape). Raises _NotTree when the conditions do
    not form a tree hanging off the root.
    """
    avail = set(avail)
    parts: List[dl.Concept] = []
    edges = []
    pending = []

    root_name = root.name
    root_is_ref = isinstance(root, Ref)

    for cond in conds:
        if isinstance(cond, Atom):
            args = cond.args
            if len(args) == 1:
                if args[0] == root:
                    parts.append(dl.Named(cond.pred))
                else:
                    pending.append(cond)
            else:
                a, b = args
                if a == root and b == root:
                    raise _NotTree("the subject is related to itself")
                if a == root:
                    edges.append((dl.Role(cond.pred), b, cond))
                elif b == root:
                    edges.append((dl.Role(cond.pred, inverse=True), a, cond))
                else:
                    pending.append(cond)
        elif isinstance(cond, Imp):
            raise _NotTree("a nested implication cannot be a class description")
        else:
            free = _refs_of_cond(cond)
            owned = free <= {root_name} if root_is_ref else not free
            if owned:
                parts.append(_box_concept(root, cond, allow_nominals))
            else:
                pending.append(cond)

    for role, other, _atom in edges:
        if isinstance(other, Ind):
            if not allow_nominals:
                raise _NotTree("a proper name occurs inside a universal statement")
            parts.append(dl.SomeValuesFrom(role, dl.OneOf(other.name)))
            continue
        if other.name not in avail:
            raise _NotTree(f"a referent is shared between branches")
        avail.discard(other.name)
        comp_refs = {other.name}
        comp_conds = []
        changed = True
        while changed:
            changed = False
            for cond in pending:
                if cond in comp_conds:
                    continue
                touched = _refs_of_cond(cond)
                if touched & comp_refs:
                    comp_conds.append(cond)
                    comp_refs |= touched
                    changed = True
        pending = [c for c in pending if c not in comp_conds]
        child_avail = (comp_refs - {other.name}) & avail
        avail -= child_avail
        child = _concept_about(other, comp_conds, child_avail, allow_nominals)
        parts.append(dl.SomeValuesFrom(role, child))

    if pending:
        raise _NotTree("a condition is not connected to the subject")
    return dl.intersection_of(parts)


def _box_concept(root, cond, allow_nominals) -> dl.Concept:
    if isinstance(cond, Neg):
        return dl.Complement(
            _concept_about(root, cond.drs.conds, set(cond.drs.refs), allow_nominals)
        )
    if isinstance(cond, Alt):
        left = _concept_about(root, cond.left.conds, set(cond.left.refs), allow_nominals)
        right = _concept_about(root, cond.right.conds, set(cond.right.refs), allow_nominals)
        return dl.union_of((left, right))
    if isinstance(cond, Card):
        counted = Ref(cond.ref)
        links = []
        rest = []
        for inner in cond.drs.conds:
            if (
                isinstance(inner, Atom)
                and len(inner.args) == 2
                and root in inner.args
                and counted in inner.args
            ):
                links.append(inner)
            else:
                rest.append(inner)
        if len(links) != 1:
            raise _NotTree("a counted phrase is not linked to the subject by one relation")
        link = links[0]
        role = dl.Role(link.pred)
        if link.args[0] == counted:
            role = role.inverted()
        child_avail = set(cond.drs.refs) - {cond.ref}
        child = _concept_about(counted, rest, child_avail, allow_nominals)
        ctor = {"<=": dl.MaxCard, ">=": dl.MinCard, "=": dl.ExactCard}[cond.op]
        return ctor(cond.n, role, child)
    raise _NotTree("unsupported condition shape")


def _subproperty_pattern(imp: Imp) -> Optional[dl.SubPropertyOf]:
    ant, cons = imp.antecedent, imp.consequent
    if len(ant.refs) != 2 or len(ant.conds) != 1 or cons.refs or len(cons.conds) != 1:
        return None
    a, c = ant.conds[0], cons.conds[0]
    if not (isinstance(a, Atom) and isinstance(c, Atom)):
        return None
    if len(a.args) != 2 or a.args != c.args:
        return None
    if not all(isinstance(t, Ref) for t in a.args) or a.args[0] == a.args[1]:
        return None
    if set(t.name for t in a.args) != set(ant.refs):
        return None
    return dl.SubPropertyOf(dl.Role(a.pred), dl.Role(c.pred))


def map_to_owl(drs: Drs) -> Expressibility:
    """Pattern-match a sentence box onto the supported axiom shapes."""
    conds = list(drs.conds)
    refs = list(drs.refs)

    if not refs and len(conds) == 1 and isinstance(conds[0], Imp):
        imp = conds[0]
        sub_prop = _subproperty_pattern(imp)
        if sub_prop is not None:
            return InOwl((sub_prop,))
        reason = None
        for root in imp.antecedent.refs:
            try:
                sub = _concept_about(
                    Ref(root),
                    imp.antecedent.conds,
                    set(imp.antecedent.refs) - {root},
                    allow_nominals=False,
                )
                sup = _concept_about(
                    Ref(root),
                    imp.consequent.conds,
                    set(imp.consequent.refs),
                    allow_nominals=False,
                )
                return InOwl((dl.SubClassOf(sub, sup),))
            except _NotTree as exc:
                if reason is None:
                    reason = exc.reason
        return OutsideOwl(reason or "implication without a subject referent")

    axioms: List[dl.Axiom] = []
    rest = []
    for cond in conds:
        if isinstance(cond, Atom) and all(isinstance(t, Ind) for t in cond.args):
            if len(cond.args) == 1:
                axioms.append(dl.ClassAssertion(dl.Named(cond.pred), cond.args[0].name))
            else:
                axioms.append(
                    dl.PropertyAssertion(
                        dl.Role(cond.pred), cond.args[0].name, cond.args[1].name
                    )
                )
        else:
            rest.append(cond)

    if rest:
        roots = individuals_in(Drs(conds=rest))
        if not roots:
            return OutsideOwl("an existential statement about unnamed individuals")
        reason = None
        mapped = None
        for root in roots:
            try:
                concept = _concept_about(Ind(root), rest, set(refs), allow_nominals=True)
                mapped = dl.ClassAssertion(concept, root)
                break
            except _NotTree as exc:
                if reason is None:
                    reason = exc.reason
        if mapped is None:
            return OutsideOwl(reason or "no named subject to anchor the statement")
        axioms.append(mapped)
    return InOwl(tuple(axioms))


# ---------------------------------------------------------------------------
# Questions and the a/every heuristic
# ---------------------------------------------------------------------------

def translate_question(tree: Node, lexicon=None) -> Query:
    """Interrogative tree -> realization query (for a proper name) or
    retrieval query (for a class description)."""
    if tree.rule != "s_quest":
        raise UnsupportedQuestionError("not a question")
    quest = tree.children[0]
    builder = _Builder(tree)
    box = Drs()
    ref = builder.fresh()
    box.refs.append(ref)
    builder.add_candidate(_Candidate(Ref(ref)))

    if quest.rule in ("quest_what", "quest_who"):
        qvp = quest.children[1]
        if qvp.rule == "qvp_is_pn":
            return IndividualQuery(qvp.children[1].token.entry_id)
        builder.vp(qvp.children[0], Ref(ref), box)
    elif quest.rule in ("quest_which_sg", "quest_which_pl"):
        cand = builder.find_candidate(Ref(ref))
        builder.apply_n1(quest.children[1], Ref(ref), box, cand)
        builder.vp(quest.children[2], Ref(ref), box)
    else:
        raise UnsupportedQuestionError(quest.rule)

    try:
        concept = _concept_about(
            Ref(ref), box.conds, set(box.refs) - {ref}, allow_nominals=True
        )
    except _NotTree as exc:
        raise UnsupportedQuestionError(exc.reason) from None
    return ClassQuery(concept)


def suggest_every(tokens, grammar: Grammar):
    """Offer the every-rewrite for sentences starting with "a"/"an"."""
    if not tokens:
        return None
    first = tokens[0]
    if first.kind != "word" or first.surface not in ("a", "an"):
        return None
    rewritten = [Token(kind="word", surface="every")] + list(tokens[1:])
    try:
        grammar.parse(rewritten)
    except Exception:
        return None
    return rewritten
