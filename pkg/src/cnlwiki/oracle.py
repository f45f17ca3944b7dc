"""Finite-model search: the independent oracle the reasoner is tested against.

Axioms are grounded over a fixed small domain into propositional formulas
(variables: class membership and role edges per element), and a plain DPLL
search looks for a satisfying interpretation. Named individuals map to the
first domain elements injectively, mirroring the unique-name assumption.

The same grounding machinery checks logical equivalence of first-order
formulas over bounded domains, which is how the OWL mapping is validated
against the direct DRS translation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Optional, Set, Tuple

from . import dl
from .errors import TooLargeError
from .logic import (
    FAtom,
    FAnd,
    FCount,
    FEq,
    FImp,
    FNot,
    FOr,
    FQuant,
    Fol,
    fol_signature,
)

MAX_DOMAIN = 4
MAX_VARIABLES = 400


# -- propositional toolbox -----------------------------------------------------

def p_not(f):
    if f is True:
        return False
    if f is False:
        return True
    return ("not", f)


def _literal(p):
    """(var, polarity) for bare literals, else None."""
    if isinstance(p, tuple):
        if p[0] == "v":
            return (p[1], True)
        if p[0] == "not" and isinstance(p[1], tuple) and p[1][0] == "v":
            return (p[1][1], False)
    return None


def p_and(parts):
    flat, seen, lits = [], set(), {}
    for p in parts:
        if p is False:
            return False
        if p is True:
            continue
        subparts = p[1] if isinstance(p, tuple) and p[0] == "and" else (p,)
        for q in subparts:
            lit = _literal(q)
            if lit is not None:
                if lits.get(lit[0], lit[1]) != lit[1]:
                    return False  # x and ~x
                lits[lit[0]] = lit[1]
            if q not in seen:
                seen.add(q)
                flat.append(q)
    if not flat:
        return True
    if len(flat) == 1:
        return flat[0]
    return ("and", tuple(flat))


def p_or(parts):
    flat, seen, lits = [], set(), {}
    for p in parts:
        if p is True:
            return True
        if p is False:
            continue
        subparts = p[1] if isinstance(p, tuple) and p[0] == "or" else (p,)
        for q in subparts:
            lit = _literal(q)
            if lit is not None:
                if lits.get(lit[0], lit[1]) != lit[1]:
                    return True  # x or ~x
                lits[lit[0]] = lit[1]
            if q not in seen:
                seen.add(q)
                flat.append(q)
    if not flat:
        return False
    if len(flat) == 1:
        return flat[0]
    return ("or", tuple(flat))


def prop_eval(f, asg):
    """Three-valued evaluation; None when undetermined."""
    if f is True or f is False:
        return f
    tag = f[0]
    if tag == "v":
        return asg.get(f[1])
    if tag == "not":
        inner = prop_eval(f[1], asg)
        return None if inner is None else not inner
    if tag == "and":
        undecided = False
        for p in f[1]:
            v = prop_eval(p, asg)
            if v is False:
                return False
            if v is None:
                undecided = True
        return None if undecided else True
    if tag == "or":
        undecided = False
        for p in f[1]:
            v = prop_eval(p, asg)
            if v is True:
                return True
            if v is None:
                undecided = True
        return None if undecided else False
    raise TypeError(f)


def prop_vars(f, out=None):
    if out is None:
        out = {}
    if f is True or f is False:
        return out
    tag = f[0]
    if tag == "v":
        out.setdefault(f[1])
    elif tag == "not":
        prop_vars(f[1], out)
    else:
        for p in f[1]:
            prop_vars(p, out)
    return out


def _substitute(f, var, value):
    """Replace one variable by a constant and fold."""
    if f is True or f is False:
        return f
    tag = f[0]
    if tag == "v":
        return value if f[1] == var else f
    if tag == "not":
        return p_not(_substitute(f[1], var, value))
    parts = [_substitute(p, var, value) for p in f[1]]
    return p_and(parts) if tag == "and" else p_or(parts)


def _first_var(f):
    if f is True or f is False:
        return None
    tag = f[0]
    if tag == "v":
        return f[1]
    if tag == "not":
        return _first_var(f[1])
    for p in f[1]:
        v = _first_var(p)
        if v is not None:
            return v
    return None


def _units_of(f):
    """Forced literals at the top level of a formula."""
    parts = f[1] if isinstance(f, tuple) and f[0] == "and" else (f,)
    units = []
    for p in parts:
        if isinstance(p, tuple):
            if p[0] == "v":
                units.append((p[1], True))
            elif p[0] == "not" and isinstance(p[1], tuple) and p[1][0] == "v":
                units.append((p[1][1], False))
    return units


def prop_sat(f) -> Optional[dict]:
    """DPLL with unit propagation over folded formulas.

    Assignments substitute into the formula and fold constants away, so
    branching always happens on a variable of a live subformula and forced
    literals propagate before any split.
    """

    def search(f, asg):
        while True:
            if f is True:
                return asg
            if f is False:
                return None
            units = _units_of(f)
            if not units:
                break
            for var, value in units:
                if asg.get(var, value) != value:
                    return None
                asg[var] = value
            for var, value in units:
                f = _substitute(f, var, value)
        var = _first_var(f)
        for value in (False, True):
            hit = search(_substitute(f, var, value), {**asg, var: value})
            if hit is not None:
                return hit
        return None

    return search(f, {})


# -- grounding ------------------------------------------------------------------

def _edge_var(role: dl.Role, e, f):
    if role.inverse:
        e, f = f, e
    return ("v", ("r", role.name, e, f))


def _ground_concept(c: dl.Concept, e, domain, elem_of):
    if isinstance(c, dl.Named):
        return ("v", ("c", c.name, e))
    if isinstance(c, dl.Top):
        return True
    if isinstance(c, dl.Bottom):
        return False
    if isinstance(c, dl.Complement):
        return p_not(_ground_concept(c.concept, e, domain, elem_of))
    if isinstance(c, dl.Intersection):
        return p_and([_ground_concept(o, e, domain, elem_of) for o in c.operands])
    if isinstance(c, dl.Union_):
        return p_or([_ground_concept(o, e, domain, elem_of) for o in c.operands])
    if isinstance(c, dl.SomeValuesFrom):
        return p_or(
            [
                p_and(
                    [
                        _edge_var(c.role, e, f),
                        _ground_concept(c.concept, f, domain, elem_of),
                    ]
                )
                for f in range(domain)
            ]
        )
    if isinstance(c, dl.AllValuesFrom):
        return p_and(
            [
                p_or(
                    [
                        p_not(_edge_var(c.role, e, f)),
                        _ground_concept(c.concept, f, domain, elem_of),
                    ]
                )
                for f in range(domain)
            ]
        )
    if isinstance(c, dl.MinCard):
        if c.n == 0:
            return True
        if c.n > domain:
            return False
        witness = [
            p_and(
                [
                    _edge_var(c.role, e, f),
                    _ground_concept(c.concept, f, domain, elem_of),
                ]
            )
            for f in range(domain)
        ]
        return p_or(
            [p_and([witness[f] for f in combo])
             for combo in itertools.combinations(range(domain), c.n)]
        )
    if isinstance(c, dl.MaxCard):
        return p_not(
            _ground_concept(dl.MinCard(c.n + 1, c.role, c.concept), e, domain, elem_of)
        )
    if isinstance(c, dl.ExactCard):
        return p_and(
            [
                _ground_concept(dl.MinCard(c.n, c.role, c.concept), e, domain, elem_of),
                _ground_concept(dl.MaxCard(c.n, c.role, c.concept), e, domain, elem_of),
            ]
        )
    if isinstance(c, dl.OneOf):
        return e == elem_of[c.individual]
    raise TypeError(c)


def _ground_axiom(ax: dl.Axiom, domain, elem_of):
    if isinstance(ax, dl.SubClassOf):
        return p_and(
            [
                p_or(
                    [
                        p_not(_ground_concept(ax.sub, e, domain, elem_of)),
                        _ground_concept(ax.sup, e, domain, elem_of),
                    ]
                )
                for e in range(domain)
            ]
        )
    if isinstance(ax, dl.ClassAssertion):
        return _ground_concept(ax.concept, elem_of[ax.individual], domain, elem_of)
    if isinstance(ax, dl.PropertyAssertion):
        return _edge_var(dl.Role(ax.role.name), elem_of[ax.subject], elem_of[ax.object])
    if isinstance(ax, dl.SubPropertyOf):
        return p_and(
            [
                p_or(
                    [
                        p_not(_edge_var(ax.sub, e, f)),
                        _edge_var(ax.sup, e, f),
                    ]
                )
                for e in range(domain)
                for f in range(domain)
            ]
        )
    raise TypeError(ax)


@dataclass
class Model:
    domain: int
    individual_map: Dict[str, int]
    classes: Dict[str, Set[int]]
    roles: Dict[str, Set[Tuple[int, int]]]


def finite_model_check(kb: dl.KbSnapshot, max_domain: int = MAX_DOMAIN) -> Optional[Model]:
    """Exhaustively search for a model with at most ``max_domain`` elements.

    Individuals are mapped injectively onto the first elements (unique-name
    assumption); up to renaming this loses no models. Returns the first model
    found or None when no interpretation within the bound satisfies the KB.
    """
    if max_domain > MAX_DOMAIN:
        raise TooLargeError(f"domain bound {max_domain} exceeds {MAX_DOMAIN}")
    individuals = sorted(kb.individuals)
    if len(individuals) > max_domain:
        raise TooLargeError(
            f"{len(individuals)} distinct individuals cannot fit in {max_domain} elements"
        )
    for domain in range(max(1, len(individuals)), max_domain + 1):
        if (
            domain * len(kb.classes) + domain * domain * len(kb.roles)
            > MAX_VARIABLES
        ):
            raise TooLargeError("signature too large for exhaustive model search")
        elem_of = {name: i for i, name in enumerate(individuals)}
        formula = p_and([_ground_axiom(ax, domain, elem_of) for ax in kb.axioms])
        asg = prop_sat(formula)
        if asg is not None:
            classes = {c: set() for c in sorted(kb.classes)}
            roles = {r: set() for r in sorted(kb.roles)}
            for var, value in asg.items():
                if not value:
                    continue
                if var[0] == "c":
                    classes[var[1]].add(var[2])
                else:
                    roles[var[1]].add((var[2], var[3]))
            return Model(domain, elem_of, classes, roles)
    return None


def oracle_retrieve(kb: dl.KbSnapshot, concept: dl.Concept, max_domain: int = MAX_DOMAIN):
    """Individuals in the concept, decided by refuting models within the bound.

    Sound for knowledge bases whose countermodels are small (the toy fixtures
    used in tests).
    """
    out = set()
    for ind in sorted(kb.individuals):
        refuted = kb.with_axioms([dl.ClassAssertion(dl.Complement(concept), ind)])
        if finite_model_check(refuted, max_domain) is None:
            out.add(ind)
    return out


def oracle_realize(kb: dl.KbSnapshot, individual: str, max_domain: int = MAX_DOMAIN):
    out = set()
    for cname in sorted(kb.classes):
        refuted = kb.with_axioms(
            [dl.ClassAssertion(dl.Complement(dl.Named(cname)), individual)]
        )
        if finite_model_check(refuted, max_domain) is None:
            out.add(cname)
    return out


# -- first-order side ------------------------------------------------------------

def fol_to_prop(f: Fol, domain: int, consts: Dict[str, int], env=None):
    env = env or {}
    if isinstance(f, FAtom):
        vals = tuple(
            env[a] if k == "var" else consts[a] for a, k in zip(f.args, f.kinds)
        )
        if len(vals) == 1:
            return ("v", ("c", f.pred, vals[0]))
        return ("v", ("r", f.pred, vals[0], vals[1]))
    if isinstance(f, FNot):
        return p_not(fol_to_prop(f.body, domain, consts, env))
    if isinstance(f, FAnd):
        return p_and([fol_to_prop(p, domain, consts, env) for p in f.parts])
    if isinstance(f, FOr):
        return p_or([fol_to_prop(p, domain, consts, env) for p in f.parts])
    if isinstance(f, FImp):
        return p_or(
            [
                p_not(fol_to_prop(f.left, domain, consts, env)),
                fol_to_prop(f.right, domain, consts, env),
            ]
        )
    if isinstance(f, FQuant):
        parts = [
            fol_to_prop(f.body, domain, consts, {**env, f.var: e})
            for e in range(domain)
        ]
        return p_and(parts) if f.kind == "forall" else p_or(parts)
    if isinstance(f, FCount):
        bodies = [
            fol_to_prop(f.body, domain, consts, {**env, f.var: e})
            for e in range(domain)
        ]

        def at_least(n):
            if n <= 0:
                return True
            if n > domain:
                return False
            return p_or(
                [p_and([bodies[i] for i in combo])
                 for combo in itertools.combinations(range(domain), n)]
            )

        if f.op == ">=":
            return at_least(f.n)
        if f.op == "<=":
            return p_not(at_least(f.n + 1))
        return p_and([at_least(f.n), p_not(at_least(f.n + 1))])
    if isinstance(f, FEq):
        left = env[f.left] if f.left_kind == "var" else consts[f.left]
        right = env[f.right] if f.right_kind == "var" else consts[f.right]
        return left == right
    raise TypeError(f)


def fol_equivalent(f1: Fol, f2: Fol, max_domain: int = 3) -> bool:
    """True when the two closed formulas agree on every interpretation with
    at most ``max_domain`` elements (constants range over all mappings)."""
    u1, b1, c1 = fol_signature(f1)
    u2, b2, c2 = fol_signature(f2)
    consts = sorted(c1 | c2)
    for domain in range(1, max_domain + 1):
        for assignment in itertools.product(range(domain), repeat=len(consts)):
            cmap = dict(zip(consts, assignment))
            g1 = fol_to_prop(f1, domain, cmap)
            g2 = fol_to_prop(f2, domain, cmap)
            difference = p_or(
                [p_and([g1, p_not(g2)]), p_and([g2, p_not(g1)])]
            )
            if prop_sat(difference) is not None:
                return False
    return True


def axioms_to_fol(axioms) -> Fol:
    """First-order reading of a set of OWL axioms (conjunction)."""
    parts = [_axiom_fol(ax) for ax in axioms]
    if len(parts) == 1:
        return parts[0]
    return FAnd(tuple(parts))


_VARS = ("x0", "x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x9")


def _axiom_fol(ax: dl.Axiom) -> Fol:
    if isinstance(ax, dl.SubClassOf):
        body = FImp(_concept_fol(ax.sub, _VARS[0], 1), _concept_fol(ax.sup, _VARS[0], 1))
        return FQuant("forall", _VARS[0], body)
    if isinstance(ax, dl.ClassAssertion):
        return _concept_fol_term(ax.concept, ax.individual, "const", 0)
    if isinstance(ax, dl.PropertyAssertion):
        return FAtom(ax.role.name, (ax.subject, ax.object), ("const", "const"))
    if isinstance(ax, dl.SubPropertyOf):
        body = FImp(
            FAtom(ax.sub.name, (_VARS[0], _VARS[1]), ("var", "var")),
            FAtom(ax.sup.name, (_VARS[0], _VARS[1]), ("var", "var")),
        )
        return FQuant("forall", _VARS[0], FQuant("forall", _VARS[1], body))
    raise TypeError(ax)


def _role_atom(role: dl.Role, a, ka, b, kb) -> Fol:
    if role.inverse:
        a, ka, b, kb = b, kb, a, ka
    return FAtom(role.name, (a, b), (ka, kb))


def _concept_fol(c: dl.Concept, var: str, depth: int) -> Fol:
    return _concept_fol_term(c, var, "var", depth)


def _concept_fol_term(c: dl.Concept, term: str, kind: str, depth: int) -> Fol:
    if isinstance(c, dl.Named):
        return FAtom(c.name, (term,), (kind,))
    if isinstance(c, dl.Top):
        return FOr((FAtom("__top__", (term,), (kind,)),
                    FNot(FAtom("__top__", (term,), (kind,)))))
    if isinstance(c, dl.Bottom):
        return FAnd((FAtom("__top__", (term,), (kind,)),
                     FNot(FAtom("__top__", (term,), (kind,)))))
    if isinstance(c, dl.Complement):
        return FNot(_concept_fol_term(c.concept, term, kind, depth))
    if isinstance(c, dl.Intersection):
        return FAnd(tuple(_concept_fol_term(o, term, kind, depth) for o in c.operands))
    if isinstance(c, dl.Union_):
        return FOr(tuple(_concept_fol_term(o, term, kind, depth) for o in c.operands))
    if isinstance(c, dl.SomeValuesFrom):
        y = _VARS[depth]
        body = FAnd(
            (
                _role_atom(c.role, term, kind, y, "var"),
                _concept_fol(c.concept, y, depth + 1),
            )
        )
        return FQuant("exists", y, body)
    if isinstance(c, dl.AllValuesFrom):
        y = _VARS[depth]
        body = FImp(
            _role_atom(c.role, term, kind, y, "var"),
            _concept_fol(c.concept, y, depth + 1),
        )
        return FQuant("forall", y, body)
    if isinstance(c, (dl.MinCard, dl.MaxCard, dl.ExactCard)):
        y = _VARS[depth]
        op = {"MinCard": ">=", "MaxCard": "<=", "ExactCard": "="}[type(c).__name__]
        body = FAnd(
            (
                _role_atom(c.role, term, kind, y, "var"),
                _concept_fol(c.concept, y, depth + 1),
            )
        )
        return FCount(op, c.n, y, body)
    if isinstance(c, dl.OneOf):
        return FEq(term, kind, c.individual, "const")
    raise TypeError(c)
