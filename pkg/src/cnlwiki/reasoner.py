"""Tableau reasoner for the wiki's description-logic fragment.

Supported: named classes, intersection, union, complement, existential and
universal restrictions, qualified number restrictions, role hierarchies,
inverse roles, and individual names under the unique-name assumption.
Nominals (OneOf) are supported in assertion/query concepts: a fresh node
labelled with a nominal is merged into the named individual's node.

Concepts are compiled to NNF tuples; the completion graph uses pairwise
blocking so generation terminates in the presence of inverse roles and
number restrictions. Branching (union, the choose rule, and merging for
at-most restrictions) explores alternatives depth-first over graph copies
in a fixed order, so runs are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Set, Tuple

from . import dl
from .errors import InconsistentKbError, ResourceLimitError, UnknownIndividualError

DEFAULT_NODE_CAP = 100_000

TOP = ("top",)
BOTTOM = ("bottom",)


# -- concept compilation -----------------------------------------------------

def _role(r: dl.Role):
    return (r.name, r.inverse)


def _inv(role):
    return (role[0], not role[1])


def compile_concept(c: dl.Concept):
    """dl.Concept -> NNF tuple form."""
    if isinstance(c, dl.Named):
        return ("named", c.name)
    if isinstance(c, dl.Top):
        return TOP
    if isinstance(c, dl.Bottom):
        return BOTTOM
    if isinstance(c, dl.Complement):
        return negate(compile_concept(c.concept))
    if isinstance(c, dl.Intersection):
        return ("and", tuple(compile_concept(o) for o in c.operands))
    if isinstance(c, dl.Union_):
        return ("or", tuple(compile_concept(o) for o in c.operands))
    if isinstance(c, dl.SomeValuesFrom):
        return ("ge", 1, _role(c.role), compile_concept(c.concept))
    if isinstance(c, dl.AllValuesFrom):
        return ("all", _role(c.role), compile_concept(c.concept))
    if isinstance(c, dl.MinCard):
        if c.n == 0:
            return TOP
        return ("ge", c.n, _role(c.role), compile_concept(c.concept))
    if isinstance(c, dl.MaxCard):
        return ("le", c.n, _role(c.role), compile_concept(c.concept))
    if isinstance(c, dl.ExactCard):
        inner = compile_concept(c.concept)
        parts = [("le", c.n, _role(c.role), inner)]
        if c.n > 0:
            parts.insert(0, ("ge", c.n, _role(c.role), inner))
        return ("and", tuple(parts))
    if isinstance(c, dl.OneOf):
        return ("oneof", c.individual)
    raise TypeError(c)


def negate(c):
    tag = c[0]
    if tag == "named":
        return ("not", c)
    if tag == "not":
        return c[1]
    if tag == "top":
        return BOTTOM
    if tag == "bottom":
        return TOP
    if tag == "and":
        return ("or", tuple(negate(o) for o in c[1]))
    if tag == "or":
        return ("and", tuple(negate(o) for o in c[1]))
    if tag == "ge":
        _, n, role, inner = c
        return TOP if n <= 0 else ("le", n - 1, role, inner)
    if tag == "le":
        _, n, role, inner = c
        return ("ge", n + 1, role, inner)
    if tag == "all":
        return ("ge", 1, c[1], negate(c[2]))
    if tag == "oneof":
        return ("notoneof", c[1])
    if tag == "notoneof":
        return ("oneof", c[1])
    raise TypeError(c)


# -- completion graph ---------------------------------------------------------

class _Node:
    __slots__ = ("id", "name", "label", "parent", "distinct")

    def __init__(self, node_id, name=None, parent=None):
        self.id = node_id
        self.name = name  # individual name for named nodes
        self.label: Set = set()
        self.parent = parent
        self.distinct: Set[int] = set()

    def copy(self):
        n = _Node(self.id, self.name, self.parent)
        n.label = set(self.label)
        n.distinct = set(self.distinct)
        return n


class _Graph:
    def __init__(self, uc, sub_roles, budget):
        self.nodes: Dict[int, _Node] = {}
        self.edges: Dict[Tuple[int, int], Set] = {}  # (a, b) -> {role names}
        self.uc = uc
        self.sub_roles = sub_roles
        self.next_id = 0
        self.budget = budget  # shared across branch copies: global node cap
        self.by_name: Dict[str, int] = {}

    def copy(self):
        g = _Graph(self.uc, self.sub_roles, self.budget)
        g.nodes = {i: n.copy() for i, n in self.nodes.items()}
        g.edges = {k: set(v) for k, v in self.edges.items()}
        g.next_id = self.next_id
        g.by_name = dict(self.by_name)
        return g

    def new_node(self, name=None, parent=None) -> _Node:
        self.budget[0] -= 1
        if self.budget[0] < 0:
            raise ResourceLimitError("tableau node cap exceeded")
        node = _Node(self.next_id, name, parent)
        self.next_id += 1
        self.nodes[node.id] = node
        if name is not None:
            self.by_name[name] = node.id
        for c in self.uc:
            node.label.add(c)
        return node

    def named_node(self, name) -> _Node:
        if name in self.by_name:
            return self.nodes[self.by_name[name]]
        node = self.new_node(name=name)
        for other_id in self.by_name.values():
            if other_id != node.id:
                node.distinct.add(other_id)
                self.nodes[other_id].distinct.add(node.id)
        return node

    def add_edge(self, a, b, role_name):
        self.edges.setdefault((a, b), set()).add(role_name)

    def neighbors(self, x, role) -> Set[int]:
        """Nodes y with role(x, y), honoring direction and the role hierarchy."""
        name, inverted = role
        subs = self.sub_roles.get(name, {name})
        out = set()
        for (a, b), names in self.edges.items():
            if names & subs:
                if not inverted and a == x and b in self.nodes:
                    out.add(b)
                if inverted and b == x and a in self.nodes:
                    out.add(a)
        return out

    def merge(self, target: int, victim: int) -> bool:
        """Merge victim into target; False when they are required distinct."""
        t, v = self.nodes[target], self.nodes[victim]
        if target in v.distinct or victim in t.distinct:
            return False
        t.label |= v.label
        for (a, b), names in list(self.edges.items()):
            if victim in (a, b):
                del self.edges[(a, b)]
                a2 = target if a == victim else a
                b2 = target if b == victim else b
                self.edges.setdefault((a2, b2), set()).update(names)
        for node in self.nodes.values():
            if victim in node.distinct:
                node.distinct.discard(victim)
                node.distinct.add(target)
        t.distinct |= v.distinct
        t.distinct.discard(victim)
        if target in t.distinct:
            return False
        for node in self.nodes.values():
            if node.parent == victim:
                node.parent = target
        if v.name is not None:
            self.by_name[v.name] = target
            if t.name is None:
                t.name = v.name
        del self.nodes[victim]
        return True

    # -- blocking ---------------------------------------------------------

    def _edge_pair(self, a, b):
        return (
            frozenset(self.edges.get((a, b), ())),
            frozenset(self.edges.get((b, a), ())),
        )

    def directly_blocked(self, x: _Node) -> bool:
        if x.name is not None or x.parent is None:
            return False
        xp = self.nodes.get(x.parent)
        if xp is None:
            return False
        lx = frozenset(x.label)
        lxp = frozenset(xp.label)
        ex = self._edge_pair(x.parent, x.id)
        y = xp
        while y is not None and y.parent is not None:
            yp = self.nodes.get(y.parent)
            if yp is None:
                break
            if y.name is None:
                if (
                    frozenset(y.label) == lx
                    and frozenset(yp.label) == lxp
                    and self._edge_pair(y.parent, y.id) == ex
                ):
                    return True
            y = yp
        return False

    def blocked(self, x: _Node) -> bool:
        node = x
        while node is not None:
            if self.directly_blocked(node):
                return True
            node = self.nodes.get(node.parent) if node.parent is not None else None
        return False

    def indirectly_blocked(self, x: _Node) -> bool:
        node = self.nodes.get(x.parent) if x.parent is not None else None
        while node is not None:
            if self.directly_blocked(node):
                return True
            node = self.nodes.get(node.parent) if node.parent is not None else None
        return False


def _concept_key(c):
    return repr(c)


def _absorb(gcis):
    """Split GCIs into lazy-unfolding rules and residual global constraints.

    A GCI with a named class (or a negated name, or an intersection/union
    built from them) on the left becomes a trigger rule applied only to
    nodes whose label contains the trigger; everything else stays a global
    disjunction added to every node. When a name triggers on both its
    positive and negative side, the negative rules fall back to global
    constraints (a node carrying neither polarity must still satisfy them).
    """
    positive = {}
    negative = {}
    uc = []
    queue = list(gcis)
    while queue:
        left, right = queue.pop()
        if isinstance(left, dl.Union_):
            for part in left.operands:
                queue.append((part, right))
        elif isinstance(left, dl.Named):
            positive.setdefault(left.name, []).append(compile_concept(right))
        elif isinstance(left, dl.Complement) and isinstance(left.concept, dl.Named):
            negative.setdefault(left.concept.name, []).append(compile_concept(right))
        elif isinstance(left, dl.Intersection) and any(
            isinstance(p, dl.Named) for p in left.operands
        ):
            named = next(p for p in left.operands if isinstance(p, dl.Named))
            rest = tuple(p for p in left.operands if p is not named)
            residual = negate(compile_concept(dl.intersection_of(rest)))
            positive.setdefault(named.name, []).append(
                _simplify_or(residual, compile_concept(right))
            )
        else:
            uc.append(_simplify_or(negate(compile_concept(left)), compile_concept(right)))
    unfold = {}
    for name, rules in positive.items():
        unfold[("named", name)] = tuple(rules)
    for name, rules in negative.items():
        if name in positive:
            for rule in rules:
                uc.append(_simplify_or(("named", name), rule))
        else:
            unfold[("not", ("named", name))] = tuple(rules)
    return unfold, tuple(uc)


class _Tableau:
    def __init__(self, kb: dl.KbSnapshot, extra_assertions=(), cap=DEFAULT_NODE_CAP):
        self.cap = cap
        gcis = []
        role_pairs = []
        assertions = []
        for ax in tuple(kb.axioms) + tuple(extra_assertions):
            if isinstance(ax, dl.SubClassOf):
                gcis.append((ax.sub, ax.sup))
            elif isinstance(ax, dl.SubPropertyOf):
                role_pairs.append((ax.sub.name, ax.sup.name))
            elif isinstance(ax, dl.ClassAssertion):
                assertions.append(("c", ax.individual, compile_concept(ax.concept)))
            elif isinstance(ax, dl.PropertyAssertion):
                assertions.append(("r", ax.subject, ax.object, ax.role.name))
            else:
                raise TypeError(ax)
        self.unfold, self.uc = _absorb(gcis)
        self.sub_roles = _role_closure(role_pairs)
        self.assertions = assertions
        self.individuals = sorted(kb.individuals)

    def initial_graph(self) -> _Graph:
        g = _Graph(self.uc, self.sub_roles, [self.cap])
        for name in self.individuals:
            g.named_node(name)
        for a in self.assertions:
            if a[0] == "c":
                g.named_node(a[1]).label.add(a[2])
            else:
                g.add_edge(g.named_node(a[1]).id, g.named_node(a[2]).id, a[3])
        return g

    def consistent(self) -> bool:
        stack = [self.initial_graph()]
        while stack:
            if self._expand(stack.pop(), stack):
                return True
        return False

    # -- expansion ----------------------------------------------------------

    def _expand(self, g: _Graph, stack) -> bool:
        """Run deterministic rules to completion; push branch alternatives.

        Returns True when ``g`` is complete and clash-free (a model exists).
        """
        while True:
            if self._clash(g):
                return False
            action = self._pick(g)
            if action is None:
                return True
            kind = action[0]
            if kind == "add":
                _, node_id, concepts = action
                g.nodes[node_id].label.update(concepts)
            elif kind == "merge_nominal":
                _, node_id, name = action
                target = g.named_node(name).id
                if not g.merge(target, node_id):
                    return False
            elif kind == "generate":
                _, node_id, n, role, concept = action
                fresh = []
                for _ in range(n):
                    child = g.new_node(parent=node_id)
                    child.label.add(concept)
                    rname, inverted = role
                    if inverted:
                        g.add_edge(child.id, node_id, rname)
                    else:
                        g.add_edge(node_id, child.id, rname)
                    fresh.append(child)
                for a, b in itertools.combinations(fresh, 2):
                    a.distinct.add(b.id)
                    b.distinct.add(a.id)
            elif kind == "branch":
                _, node_id, alternatives = action
                for concepts in reversed(alternatives):
                    sub = g.copy()
                    sub.nodes[node_id].label.update(concepts)
                    stack.append(sub)
                return False
            elif kind == "branch_merge":
                _, pairs = action
                for target, victim in reversed(pairs):
                    sub = g.copy()
                    if sub.merge(target, victim):
                        stack.append(sub)
                return False
            else:
                raise AssertionError(kind)

    def _clash(self, g: _Graph) -> bool:
        for node in g.nodes.values():
            label = node.label
            if BOTTOM in label:
                return True
            for c in label:
                if c[0] == "not" and c[1] in label:
                    return True
                if c[0] == "oneof":
                    if ("notoneof", c[1]) in label:
                        return True
                    if node.name is not None and node.name != c[1]:
                        return True
                if c[0] == "notoneof" and node.name == c[1]:
                    return True
        return False

    def _pick(self, g: _Graph):
        """First applicable expansion step, in a fixed deterministic order."""
        order = sorted(g.nodes)
        # and-rule / lazy unfolding / nominal merges (deterministic)
        for nid in order:
            node = g.nodes[nid]
            if g.indirectly_blocked(node):
                continue
            for c in sorted(node.label, key=_concept_key):
                if c[0] == "and":
                    missing = [p for p in c[1] if p not in node.label]
                    if missing:
                        return ("add", nid, missing)
                elif c[0] == "oneof" and node.name is None:
                    return ("merge_nominal", nid, c[1])
                rules = self.unfold.get(c)
                if rules:
                    missing = [r for r in rules if r not in node.label]
                    if missing:
                        return ("add", nid, missing)
        # all-rule
        for nid in order:
            node = g.nodes[nid]
            if g.indirectly_blocked(node):
                continue
            for c in sorted(node.label, key=_concept_key):
                if c[0] == "all":
                    _, role, inner = c
                    for y in sorted(g.neighbors(nid, role)):
                        if inner not in g.nodes[y].label:
                            return ("add", y, [inner])
        # or-rule
        for nid in order:
            node = g.nodes[nid]
            if g.indirectly_blocked(node):
                continue
            for c in sorted(node.label, key=_concept_key):
                if c[0] == "or" and not any(p in node.label for p in c[1]):
                    return ("branch", nid, [[p] for p in c[1]])
        # choose-rule for at-most restrictions
        for nid in order:
            node = g.nodes[nid]
            if g.indirectly_blocked(node):
                continue
            for c in sorted(node.label, key=_concept_key):
                if c[0] == "le":
                    _, n, role, inner = c
                    neg_inner = negate(inner)
                    for y in sorted(g.neighbors(nid, role)):
                        ylabel = g.nodes[y].label
                        if inner not in ylabel and neg_inner not in ylabel:
                            return ("branch", y, [[inner], [neg_inner]])
        # at-most merging
        for nid in order:
            node = g.nodes[nid]
            if g.indirectly_blocked(node):
                continue
            for c in sorted(node.label, key=_concept_key):
                if c[0] == "le":
                    _, n, role, inner = c
                    hits = sorted(
                        y for y in g.neighbors(nid, role) if inner in g.nodes[y].label
                    )
                    if len(hits) <= n:
                        continue
                    pairs = []
                    for a, b in itertools.combinations(hits, 2):
                        na, nb = g.nodes[a], g.nodes[b]
                        if b in na.distinct or a in nb.distinct:
                            continue
                        if na.name is not None and nb.name is not None:
                            continue
                        if nb.name is not None:
                            pairs.append((b, a))
                        else:
                            pairs.append((a, b))
                    if not pairs:
                        return ("branch", nid, [])  # unsatisfiable: dead branch
                    return ("branch_merge", pairs)
        # generating rule, blocked nodes skipped
        for nid in order:
            node = g.nodes[nid]
            if node.name is None and g.blocked(node):
                continue
            if g.indirectly_blocked(node):
                continue
            for c in sorted(node.label, key=_concept_key):
                if c[0] == "ge":
                    _, n, role, inner = c
                    hits = [
                        y for y in g.neighbors(nid, role) if inner in g.nodes[y].label
                    ]
                    if _has_distinct_clique(g, hits, n):
                        continue
                    return ("generate", nid, n, role, inner)
        return None


def _has_distinct_clique(g, hits, n) -> bool:
    if len(hits) < n:
        return False
    if n == 1:
        return True
    for combo in itertools.combinations(hits, n):
        ok = True
        for a, b in itertools.combinations(combo, 2):
            if b not in g.nodes[a].distinct:
                ok = False
                break
        if ok:
            return True
    return False


def _simplify_or(a, b):
    parts = []
    for x in (a, b):
        if x[0] == "or":
            parts.extend(x[1])
        else:
            parts.append(x)
    if TOP in parts:
        return TOP
    parts = [p for p in parts if p != BOTTOM] or [BOTTOM]
    if len(parts) == 1:
        return parts[0]
    return ("or", tuple(parts))


def _role_closure(pairs):
    subs: Dict[str, Set[str]] = {}
    names = set()
    for a, b in pairs:
        names.update((a, b))
    for n in names:
        subs[n] = {n}
    changed = True
    while changed:
        changed = False
        for a, b in pairs:
            before = len(subs[b])
            subs[b] |= subs[a]
            if len(subs[b]) != before:
                changed = True
    return subs


# -- public operations --------------------------------------------------------

def check_consistency(kb: dl.KbSnapshot, node_cap=DEFAULT_NODE_CAP) -> bool:
    """True when the snapshot has a model (unique-name assumption)."""
    return _Tableau(kb, cap=node_cap).consistent()


_PROBE = "probe-0"


def _satisfiable_instance(kb: dl.KbSnapshot, concepts, node_cap) -> bool:
    probe = _PROBE
    while probe in kb.individuals:
        probe += "x"
    extra = [dl.ClassAssertion(c, probe) for c in concepts]
    tab = _Tableau(kb, extra_assertions=extra, cap=node_cap)
    tab.individuals = sorted(set(tab.individuals) | {probe})
    return tab.consistent()


def is_subsumed(kb: dl.KbSnapshot, c: dl.Concept, d: dl.Concept, node_cap=DEFAULT_NODE_CAP) -> bool:
    """kb entails c [= d."""
    return not _satisfiable_instance(kb, [c, dl.Complement(d)], node_cap)


def is_instance(kb: dl.KbSnapshot, concept: dl.Concept, individual: str, node_cap=DEFAULT_NODE_CAP) -> bool:
    extra = [dl.ClassAssertion(dl.Complement(concept), individual)]
    return not _Tableau(kb, extra_assertions=extra, cap=node_cap).consistent()


@dataclass(frozen=True)
class Hierarchy:
    classes: Tuple[str, ...]
    equivalents: Dict[str, FrozenSet[str]]
    direct_supers: Dict[str, FrozenSet[str]]
    direct_subs: Dict[str, FrozenSet[str]]


def classify(kb: dl.KbSnapshot, node_cap=DEFAULT_NODE_CAP) -> Hierarchy:
    """Inferred class hierarchy (direct edges only, equivalents grouped)."""
    if not check_consistency(kb, node_cap):
        raise InconsistentKbError("cannot classify an inconsistent knowledge base")
    classes = sorted(kb.classes)
    # told subsumers seed the cache so obvious pairs skip the tableau
    told: Dict[str, Set[str]] = {c: {c} for c in classes}
    for ax in kb.axioms:
        if (
            isinstance(ax, dl.SubClassOf)
            and isinstance(ax.sub, dl.Named)
            and isinstance(ax.sup, dl.Named)
        ):
            told.setdefault(ax.sub.name, {ax.sub.name}).add(ax.sup.name)
    changed = True
    while changed:
        changed = False
        for c in classes:
            for d in set(told.get(c, ())):
                extra = told.get(d, set()) - told[c]
                if extra:
                    told[c] |= extra
                    changed = True

    cache: Dict[Tuple[str, str], bool] = {}

    def subsumed(c, d):
        if c == d or d in told.get(c, ()):
            return True
        key = (c, d)
        if key not in cache:
            cache[key] = is_subsumed(kb, dl.Named(c), dl.Named(d), node_cap)
        return cache[key]

    equivalents = {}
    for c in classes:
        equivalents[c] = frozenset(
            d for d in classes if subsumed(c, d) and subsumed(d, c)
        )

    def strict_supers(c):
        return {
            d for d in classes if d not in equivalents[c] and subsumed(c, d)
        }

    supers = {c: strict_supers(c) for c in classes}
    direct_supers = {}
    direct_subs = {c: set() for c in classes}
    for c in classes:
        direct = set()
        for d in supers[c]:
            if not any(
                d in supers[e] for e in supers[c] if e not in equivalents[d]
            ):
                direct.add(d)
        direct_supers[c] = frozenset(direct)
        for d in direct:
            direct_subs[d].add(c)
    return Hierarchy(
        classes=tuple(classes),
        equivalents=equivalents,
        direct_supers=direct_supers,
        direct_subs={c: frozenset(v) for c, v in direct_subs.items()},
    )


def realize(kb: dl.KbSnapshot, individual: str, node_cap=DEFAULT_NODE_CAP) -> Set[str]:
    """All named classes the individual provably belongs to."""
    if individual not in kb.individuals:
        raise UnknownIndividualError(individual)
    return {
        c
        for c in sorted(kb.classes)
        if is_instance(kb, dl.Named(c), individual, node_cap)
    }


def retrieve(kb: dl.KbSnapshot, concept: dl.Concept, node_cap=DEFAULT_NODE_CAP) -> Set[str]:
    """All individuals provably belonging to the concept."""
    return {
        i
        for i in sorted(kb.individuals)
        if is_instance(kb, concept, i, node_cap)
    }
