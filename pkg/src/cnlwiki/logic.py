"""Discourse representation structures and their first-order translation.

A Drs is a box of discourse referents plus conditions; conditions are atoms,
negated boxes, implications between boxes, binary disjunctions, and counting
conditions over a box. The first-order side is a small AST with counting
quantifiers, a canonical ASCII rendering, and an evaluator over finite
interpretations (used by the model-checking oracles in the tests).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Ind:
    name: str


Term = Union[Ref, Ind]


@dataclass
class Atom:
    pred: str
    args: Tuple[Term, ...]


@dataclass
class Neg:
    drs: "Drs"


@dataclass
class Imp:
    antecedent: "Drs"
    consequent: "Drs"


@dataclass
class Alt:
    left: "Drs"
    right: "Drs"


@dataclass
class Card:
    op: str  # ">=" | "<=" | "="
    n: int
    ref: str  # the counted referent, declared in drs.refs
    drs: "Drs"


Condition = Union[Atom, Neg, Imp, Alt, Card]


@dataclass
class Drs:
    refs: List[str] = field(default_factory=list)
    conds: List[Condition] = field(default_factory=list)

    def free_refs(self, bound=frozenset()):
        """Referent names used inside this box but declared outside it."""
        bound = set(bound) | set(self.refs)
        free = set()
        for c in self.conds:
            free |= _cond_free_refs(c, bound)
        return free


def _cond_free_refs(cond, bound):
    if isinstance(cond, Atom):
        return {t.name for t in cond.args if isinstance(t, Ref) and t.name not in bound}
    if isinstance(cond, Neg):
        return cond.drs.free_refs(bound)
    if isinstance(cond, Imp):
        inner = set(bound) | set(cond.antecedent.refs)
        return cond.antecedent.free_refs(bound) | cond.consequent.free_refs(inner)
    if isinstance(cond, Alt):
        return cond.left.free_refs(bound) | cond.right.free_refs(bound)
    if isinstance(cond, Card):
        return cond.drs.free_refs(bound)
    raise TypeError(cond)


def individuals_in(drs: Drs):
    """Proper-name constants used anywhere in the box, in appearance order."""
    out = []

    def walk_cond(c):
        if isinstance(c, Atom):
            for t in c.args:
                if isinstance(t, Ind) and t.name not in out:
                    out.append(t.name)
        elif isinstance(c, Neg):
            walk(c.drs)
        elif isinstance(c, Imp):
            walk(c.antecedent)
            walk(c.consequent)
        elif isinstance(c, Alt):
            walk(c.left)
            walk(c.right)
        elif isinstance(c, Card):
            walk(c.drs)

    def walk(d):
        for c in d.conds:
            walk_cond(c)

    walk(drs)
    return out


# ---------------------------------------------------------------------------
# First-order formulas
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FAtom:
    pred: str
    args: Tuple[str, ...]  # variable display names or constant names
    kinds: Tuple[str, ...]  # "var" | "const" per argument


@dataclass(frozen=True)
class FNot:
    body: "Fol"


@dataclass(frozen=True)
class FAnd:
    parts: Tuple["Fol", ...]


@dataclass(frozen=True)
class FOr:
    parts: Tuple["Fol", ...]


@dataclass(frozen=True)
class FImp:
    left: "Fol"
    right: "Fol"


@dataclass(frozen=True)
class FQuant:
    kind: str  # "forall" | "exists"
    var: str
    body: "Fol"


@dataclass(frozen=True)
class FCount:
    op: str  # ">=" | "<=" | "="
    n: int
    var: str
    body: "Fol"


@dataclass(frozen=True)
class FEq:
    left: str
    left_kind: str  # "var" | "const"
    right: str
    right_kind: str


Fol = Union[FAtom, FNot, FAnd, FOr, FImp, FQuant, FCount, FEq]


def _display_names():
    i = 0
    while True:
        name = ""
        k = i
        while True:
            name = chr(ord("A") + k % 26) + name
            k = k // 26 - 1
            if k < 0:
                break
        yield name
        i += 1


class _FolBuilder:
    def __init__(self):
        self.names = _display_names()
        self.mapping = {}

    def var(self, ref_name):
        if ref_name not in self.mapping:
            self.mapping[ref_name] = next(self.names)
        return self.mapping[ref_name]

    def term(self, t: Term):
        if isinstance(t, Ref):
            return self.var(t.name), "var"
        return t.name, "const"

    def box(self, drs: Drs, skip_refs=()) -> Fol:
        body = self.conj([self.cond(c) for c in drs.conds])
        for r in reversed([r for r in drs.refs if r not in skip_refs]):
            body = FQuant("exists", self.var(r), body)
        return body

    def conj(self, parts):
        flat = []
        for p in parts:
            if isinstance(p, FAnd):
                flat.extend(p.parts)
            else:
                flat.append(p)
        if len(flat) == 1:
            return flat[0]
        return FAnd(tuple(flat))

    def cond(self, c) -> Fol:
        if isinstance(c, Atom):
            names, kinds = [], []
            for t in c.args:
                n, k = self.term(t)
                names.append(n)
                kinds.append(k)
            return FAtom(c.pred, tuple(names), tuple(kinds))
        if isinstance(c, Neg):
            return FNot(self.box(c.drs))
        if isinstance(c, Imp):
            left = self.conj([self.cond(x) for x in c.antecedent.conds])
            body = FImp(left, self.box(c.consequent))
            for r in reversed(c.antecedent.refs):
                body = FQuant("forall", self.var(r), body)
            return body
        if isinstance(c, Alt):
            return FOr((self.box(c.left), self.box(c.right)))
        if isinstance(c, Card):
            inner = self.box(c.drs, skip_refs=(c.ref,))
            return FCount(c.op, c.n, self.var(c.ref), inner)
        raise TypeError(c)


def drs_to_fol(drs: Drs) -> Fol:
    """Standard box-by-box translation; variables renamed A, B, C, ..."""
    return _FolBuilder().box(drs)


def render_fol(f: Fol) -> str:
    """Canonical ASCII rendering: forall/exists, &, |, ~, ->."""
    if isinstance(f, (FQuant, FCount)):
        prefix = []
        while isinstance(f, (FQuant, FCount)):
            if isinstance(f, FQuant):
                prefix.append(f"{f.kind} {f.var}")
            else:
                prefix.append(f"exists{f.op}{f.n} {f.var}")
            f = f.body
        return " ".join(prefix) + " (" + _render_bare(f) + ")"
    return _render_bare(f)


def _render_bare(f: Fol) -> str:
    if isinstance(f, FAtom):
        return f"{f.pred}({','.join(f.args)})"
    if isinstance(f, FNot):
        inner = f.body
        if isinstance(inner, (FAnd, FOr, FImp)):
            return "~(" + _render_bare(inner) + ")"
        return "~" + render_fol(inner)
    if isinstance(f, FAnd):
        return " & ".join(
            "(" + _render_bare(p) + ")" if isinstance(p, (FOr, FImp)) else render_fol(p)
            for p in f.parts
        )
    if isinstance(f, FOr):
        return " | ".join(
            "(" + _render_bare(p) + ")" if isinstance(p, (FAnd, FImp)) else render_fol(p)
            for p in f.parts
        )
    if isinstance(f, FImp):
        left = _render_bare(f.left) if not isinstance(f.left, FImp) else "(" + _render_bare(f.left) + ")"
        return left + " -> " + _render_bare(f.right)
    if isinstance(f, (FQuant, FCount)):
        return render_fol(f)
    raise TypeError(f)


# ---------------------------------------------------------------------------
# Evaluation over finite interpretations (test oracle support)
# ---------------------------------------------------------------------------

@dataclass
class Interpretation:
    domain: int  # elements are 0 .. domain-1
    unary: dict  # pred -> frozenset[int]
    binary: dict  # pred -> frozenset[(int, int)]
    consts: dict  # constant name -> element


def eval_fol(f: Fol, interp: Interpretation, env: Optional[dict] = None) -> bool:
    env = env or {}
    if isinstance(f, FAtom):
        vals = tuple(
            env[a] if k == "var" else interp.consts[a]
            for a, k in zip(f.args, f.kinds)
        )
        if len(vals) == 1:
            return vals[0] in interp.unary.get(f.pred, frozenset())
        return vals in interp.binary.get(f.pred, frozenset())
    if isinstance(f, FNot):
        return not eval_fol(f.body, interp, env)
    if isinstance(f, FAnd):
        return all(eval_fol(p, interp, env) for p in f.parts)
    if isinstance(f, FOr):
        return any(eval_fol(p, interp, env) for p in f.parts)
    if isinstance(f, FImp):
        return (not eval_fol(f.left, interp, env)) or eval_fol(f.right, interp, env)
    if isinstance(f, FQuant):
        hits = (
            eval_fol(f.body, interp, {**env, f.var: e}) for e in range(interp.domain)
        )
        return all(hits) if f.kind == "forall" else any(hits)
    if isinstance(f, FCount):
        count = sum(
            1 for e in range(interp.domain) if eval_fol(f.body, interp, {**env, f.var: e})
        )
        if f.op == ">=":
            return count >= f.n
        if f.op == "<=":
            return count <= f.n
        return count == f.n
    if isinstance(f, FEq):
        left = env[f.left] if f.left_kind == "var" else interp.consts[f.left]
        right = env[f.right] if f.right_kind == "var" else interp.consts[f.right]
        return left == right
    raise TypeError(f)


def fol_signature(f: Fol):
    """(unary preds, binary preds, constants) used in a formula."""
    unary, binary, consts = set(), set(), set()

    def walk(g):
        if isinstance(g, FAtom):
            (unary if len(g.args) == 1 else binary).add(g.pred)
            for a, k in zip(g.args, g.kinds):
                if k == "const":
                    consts.add(a)
        elif isinstance(g, FNot):
            walk(g.body)
        elif isinstance(g, (FAnd, FOr)):
            for p in g.parts:
                walk(p)
        elif isinstance(g, FImp):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, (FQuant, FCount)):
            walk(g.body)
        elif isinstance(g, FEq):
            if g.left_kind == "const":
                consts.add(g.left)
            if g.right_kind == "const":
                consts.add(g.right)

    walk(f)
    return unary, binary, consts
