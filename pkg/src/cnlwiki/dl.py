"""Description-logic vocabulary: concepts, axioms, snapshots, and rendering.

Concepts and axioms are immutable values. The functional-syntax writer keeps
the classic typed style (Class(:c), ObjectProperty(:r) nested inside the
constructors) so exported documents read like the traditional functional
serialization of these axioms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple, Union


@dataclass(frozen=True)
class Role:
    name: str
    inverse: bool = False

    def inverted(self) -> "Role":
        return Role(self.name, not self.inverse)


@dataclass(frozen=True)
class Named:
    name: str


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class Complement:
    concept: "Concept"


@dataclass(frozen=True)
class Intersection:
    operands: Tuple["Concept", ...]


@dataclass(frozen=True)
class Union_:
    operands: Tuple["Concept", ...]


@dataclass(frozen=True)
class SomeValuesFrom:
    role: Role
    concept: "Concept"


@dataclass(frozen=True)
class AllValuesFrom:
    role: Role
    concept: "Concept"


@dataclass(frozen=True)
class MinCard:
    n: int
    role: Role
    concept: "Concept"


@dataclass(frozen=True)
class MaxCard:
    n: int
    role: Role
    concept: "Concept"


@dataclass(frozen=True)
class ExactCard:
    n: int
    role: Role
    concept: "Concept"


@dataclass(frozen=True)
class OneOf:
    individual: str


Concept = Union[
    Named,
    Top,
    Bottom,
    Complement,
    Intersection,
    Union_,
    SomeValuesFrom,
    AllValuesFrom,
    MinCard,
    MaxCard,
    ExactCard,
    OneOf,
]

TOP = Top()
BOTTOM = Bottom()


def intersection_of(operands) -> Concept:
    ops = tuple(operands)
    if not ops:
        return TOP
    if len(ops) == 1:
        return ops[0]
    return Intersection(ops)


def union_of(operands) -> Concept:
    ops = tuple(operands)
    if len(ops) == 1:
        return ops[0]
    return Union_(ops)


@dataclass(frozen=True)
class SubClassOf:
    sub: Concept
    sup: Concept


@dataclass(frozen=True)
class ClassAssertion:
    concept: Concept
    individual: str


@dataclass(frozen=True)
class PropertyAssertion:
    role: Role  # never inverse; arguments are ordered instead
    subject: str
    object: str


@dataclass(frozen=True)
class SubPropertyOf:
    sub: Role
    sup: Role


Axiom = Union[SubClassOf, ClassAssertion, PropertyAssertion, SubPropertyOf]


@dataclass(frozen=True)
class KbSnapshot:
    """Axioms plus the full signature they are interpreted over."""

    axioms: Tuple[Axiom, ...] = ()
    classes: frozenset = frozenset()
    roles: frozenset = frozenset()
    individuals: frozenset = frozenset()

    @staticmethod
    def from_axioms(axioms, classes=(), roles=(), individuals=()):
        classes, roles, individuals = set(classes), set(roles), set(individuals)
        for ax in axioms:
            c_names, r_names, i_names = axiom_signature(ax)
            classes |= c_names
            roles |= r_names
            individuals |= i_names
        return KbSnapshot(
            axioms=tuple(axioms),
            classes=frozenset(classes),
            roles=frozenset(roles),
            individuals=frozenset(individuals),
        )

    @property
    def tbox(self):
        return tuple(a for a in self.axioms if isinstance(a, (SubClassOf, SubPropertyOf)))

    @property
    def abox(self):
        return tuple(
            a for a in self.axioms if isinstance(a, (ClassAssertion, PropertyAssertion))
        )

    def with_axioms(self, extra):
        return KbSnapshot.from_axioms(
            self.axioms + tuple(extra), self.classes, self.roles, self.individuals
        )


def concept_signature(c: Concept):
    classes, roles, individuals = set(), set(), set()

    def walk(x):
        if isinstance(x, Named):
            classes.add(x.name)
        elif isinstance(x, (Top, Bottom)):
            pass
        elif isinstance(x, Complement):
            walk(x.concept)
        elif isinstance(x, (Intersection, Union_)):
            for o in x.operands:
                walk(o)
        elif isinstance(x, (SomeValuesFrom, AllValuesFrom, MinCard, MaxCard, ExactCard)):
            roles.add(x.role.name)
            walk(x.concept)
        elif isinstance(x, OneOf):
            individuals.add(x.individual)
        else:
            raise TypeError(x)

    walk(c)
    return classes, roles, individuals


def axiom_signature(ax: Axiom):
    if isinstance(ax, SubClassOf):
        c1, r1, i1 = concept_signature(ax.sub)
        c2, r2, i2 = concept_signature(ax.sup)
        return c1 | c2, r1 | r2, i1 | i2
    if isinstance(ax, ClassAssertion):
        c, r, i = concept_signature(ax.concept)
        return c, r, i | {ax.individual}
    if isinstance(ax, PropertyAssertion):
        return set(), {ax.role.name}, {ax.subject, ax.object}
    if isinstance(ax, SubPropertyOf):
        return set(), {ax.sub.name, ax.sup.name}, set()
    raise TypeError(ax)


# ---------------------------------------------------------------------------
# Functional-syntax rendering
# ---------------------------------------------------------------------------

def render_role(role: Role) -> str:
    base = f"ObjectProperty(:{role.name})"
    return f"InverseOf({base})" if role.inverse else base


def render_concept(c: Concept) -> str:
    if isinstance(c, Named):
        return f"Class(:{c.name})"
    if isinstance(c, Top):
        return "Class(owl:Thing)"
    if isinstance(c, Bottom):
        return "Class(owl:Nothing)"
    if isinstance(c, Complement):
        return f"ComplementOf({render_concept(c.concept)})"
    if isinstance(c, Intersection):
        return "IntersectionOf(" + " ".join(render_concept(o) for o in c.operands) + ")"
    if isinstance(c, Union_):
        return "UnionOf(" + " ".join(render_concept(o) for o in c.operands) + ")"
    if isinstance(c, SomeValuesFrom):
        return f"SomeValuesFrom({render_role(c.role)} {render_concept(c.concept)})"
    if isinstance(c, AllValuesFrom):
        return f"AllValuesFrom({render_role(c.role)} {render_concept(c.concept)})"
    if isinstance(c, MinCard):
        return f"MinCardinality({c.n} {render_role(c.role)} {render_concept(c.concept)})"
    if isinstance(c, MaxCard):
        return f"MaxCardinality({c.n} {render_role(c.role)} {render_concept(c.concept)})"
    if isinstance(c, ExactCard):
        return f"ExactCardinality({c.n} {render_role(c.role)} {render_concept(c.concept)})"
    if isinstance(c, OneOf):
        return f"OneOf(Individual(:{c.individual}))"
    raise TypeError(c)


def render_axiom(ax: Axiom) -> str:
    if isinstance(ax, SubClassOf):
        return f"SubClassOf({render_concept(ax.sub)} {render_concept(ax.sup)})"
    if isinstance(ax, ClassAssertion):
        return f"ClassAssertion({render_concept(ax.concept)} Individual(:{ax.individual}))"
    if isinstance(ax, PropertyAssertion):
        return (
            f"PropertyAssertion({render_role(ax.role)} "
            f"Individual(:{ax.subject}) Individual(:{ax.object}))"
        )
    if isinstance(ax, SubPropertyOf):
        return f"SubPropertyOf({render_role(ax.sub)} {render_role(ax.sup)})"
    raise TypeError(ax)
