"""Abstract syntax for individual terms, formulas and proof terms.

Three separate variable namespaces are in play: first-order (individual)
variables, proof-term variables, and hypothesis variables.  Binding is by
name; alpha-equivalence (`alpha_eq`) is the term equality used throughout
the kernel, and all substitutions are capture-avoiding.

All values are immutable; nothing here mutates shared state.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

# ---------------------------------------------------------------------------
# individual (first-order) terms

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class FnApp:
    fn: str
    args: tuple["IndTerm", ...]


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Succ:
    arg: "IndTerm"


IndTerm = Union[Var, Const, FnApp, Zero, Succ]


def numeral(n: int) -> IndTerm:
    t: IndTerm = Zero()
    for _ in range(n):
        t = Succ(t)
    return t


def numeral_value(t: IndTerm) -> int | None:
    """Value of a closed 0/S term, or None if it is not a numeral."""
    n = 0
    while isinstance(t, Succ):
        n += 1
        t = t.arg
    return n if isinstance(t, Zero) else None


# ---------------------------------------------------------------------------
# formulas

@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[IndTerm, ...] = ()


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Atom, Bottom, And, Or, Imp, Forall, Exists]


def Not(a: Formula) -> Formula:
    """Negation is sugar for an implication into absurdity, never a node."""
    return Imp(a, Bottom())


def as_negation(a: Formula) -> Formula | None:
    match a:
        case Imp(body, Bottom()):
            return body
    return None


# ---------------------------------------------------------------------------
# proof terms

@dataclass(frozen=True)
class ProofVar:
    name: str


@dataclass(frozen=True)
class App:
    fn: "ProofTerm"
    arg: "ProofTerm"


@dataclass(frozen=True)
class IApp:
    fn: "ProofTerm"
    arg: IndTerm


@dataclass(frozen=True)
class Lam:
    var: str
    annot: Formula
    body: "ProofTerm"


@dataclass(frozen=True)
class ILam:
    var: str
    body: "ProofTerm"


@dataclass(frozen=True)
class Pair:
    left: "ProofTerm"
    right: "ProofTerm"


@dataclass(frozen=True)
class Proj:
    index: int
    body: "ProofTerm"


@dataclass(frozen=True)
class Inj:
    index: int
    other: Formula  # the disjunct NOT proved by the body
    body: "ProofTerm"


@dataclass(frozen=True)
class Case:
    scrut: "ProofTerm"
    lvar: str
    lbody: "ProofTerm"
    rvar: str
    rbody: "ProofTerm"


@dataclass(frozen=True)
class ExIntro:
    witness: IndTerm
    body: "ProofTerm"
    annot: Formula  # the existential formula being introduced


@dataclass(frozen=True)
class ExElim:
    scrut: "ProofTerm"
    ivar: str
    pvar: str
    body: "ProofTerm"


@dataclass(frozen=True)
class Em0:
    """Propositional excluded-middle split: left under ~P, right under P."""

    prop: Formula
    hvar: str
    left: "ProofTerm"
    right: "ProofTerm"


@dataclass(frozen=True)
class Em1:
    """Exception node: left under a universal hypothesis, right under the
    existential of its negation (in arithmetic: of its complement)."""

    hvar: str
    ivar: str
    matrix: Formula
    left: "ProofTerm"
    right: "ProofTerm"


@dataclass(frozen=True)
class Hyp:
    """Universal-hypothesis axiom: proves `all ivar. matrix`."""

    hvar: str
    ivar: str
    matrix: Formula


@dataclass(frozen=True)
class Wit:
    """Witness-awaiting axiom: proves `ex ivar. matrix`."""

    hvar: str
    ivar: str
    matrix: Formula


@dataclass(frozen=True)
class Hypz:
    """Anonymous propositional assumption, discharged by an Em0 split."""

    prop: Formula


@dataclass(frozen=True)
class Efq:
    """Ex falso axiom: proves `bot -> prop`."""

    prop: Formula


@dataclass(frozen=True)
class Markov:
    """Double-negation shift constant: proves ~~target -> target, where
    target is an existential with arrow-free propositional matrix."""

    target: Formula


@dataclass(frozen=True)
class Truth:
    """Canonical proof of a closed true atom."""

    pass


@dataclass(frozen=True)
class Rec:
    """Induction: base proves A(0), step proves all a. A(a) -> A(S a)."""

    base: "ProofTerm"
    step: "ProofTerm"
    arg: IndTerm


@dataclass(frozen=True)
class Post:
    rule: str
    args: tuple["ProofTerm", ...]


ProofTerm = Union[
    ProofVar, App, IApp, Lam, ILam, Pair, Proj, Inj, Case, ExIntro, ExElim,
    Em0, Em1, Hyp, Wit, Hypz, Efq, Markov, Truth, Rec, Post,
]


# ---------------------------------------------------------------------------
# signature and context

@dataclass(frozen=True)
class Signature:
    """Declared symbols.  In arithmetic mode the individual language is the
    fixed 0/S fragment and every predicate must carry a complement symbol."""

    constants: frozenset[str] = frozenset()
    functions: dict[str, int] = field(default_factory=dict)
    predicates: dict[str, int] = field(default_factory=dict)
    complements: dict[str, str] = field(default_factory=dict)
    prfuns: dict[str, "object"] = field(default_factory=dict)
    prrels: dict[str, "object"] = field(default_factory=dict)

    def complement_of(self, pred: str) -> str | None:
        return self.complements.get(pred)


VAR_KIND = "var"
HYP_UNIV = "univ"
HYP_WIT = "wit"
HYP_PROP = "prop"

HYP_KINDS = (HYP_UNIV, HYP_WIT, HYP_PROP)


@dataclass(frozen=True)
class CtxEntry:
    kind: str  # one of var/univ/wit/prop
    name: str
    formula: Formula


@dataclass(frozen=True)
class Context:
    entries: tuple[CtxEntry, ...] = ()

    def push(self, kind: str, name: str, formula: Formula) -> "Context":
        return Context(self.entries + (CtxEntry(kind, name, formula),))

    def lookup_proof(self, name: str) -> CtxEntry | None:
        for e in reversed(self.entries):
            if e.name == name and e.kind == VAR_KIND:
                return e
        return None

    def lookup_hyp(self, name: str) -> CtxEntry | None:
        for e in reversed(self.entries):
            if e.name == name and e.kind in HYP_KINDS:
                return e
        return None

    def visible(self) -> list[CtxEntry]:
        """Innermost entry per (namespace, name)."""
        seen: set[tuple[bool, str]] = set()
        out: list[CtxEntry] = []
        for e in reversed(self.entries):
            key = (e.kind == VAR_KIND, e.name)
            if key not in seen:
                seen.add(key)
                out.append(e)
        out.reverse()
        return out

    def formulas(self) -> list[Formula]:
        return [e.formula for e in self.visible()]


# ---------------------------------------------------------------------------
# fresh names

_STEM = re.compile(r"^(.*?)(\d*)$")


def fresh_name(base: str, avoid: set[str] | frozenset[str]) -> str:
    """A name not in `avoid`, derived from `base` by bumping a numeric suffix."""
    m = _STEM.match(base)
    stem = m.group(1) or "v"
    n = int(m.group(2)) if m.group(2) else 0
    while True:
        n += 1
        cand = f"{stem}{n}"
        if cand not in avoid:
            return cand


# ---------------------------------------------------------------------------
# free variables

def free_ind_vars(x: IndTerm | Formula | ProofTerm) -> frozenset[str]:
    match x:
        case Var(name):
            return frozenset({name})
        case Const() | Zero() | Bottom() | ProofVar() | Truth():
            return frozenset()
        case Hypz(prop) | Efq(prop):
            return free_ind_vars(prop)
        case Markov(target):
            return free_ind_vars(target)
        case Succ(arg):
            return free_ind_vars(arg)
        case FnApp(_, args) | Atom(_, args):
            out: frozenset[str] = frozenset()
            for a in args:
                out |= free_ind_vars(a)
            return out
        case And(l, r) | Or(l, r) | Imp(l, r):
            return free_ind_vars(l) | free_ind_vars(r)
        case Forall(v, b) | Exists(v, b):
            return free_ind_vars(b) - {v}
        case App(fn, arg):
            return free_ind_vars(fn) | free_ind_vars(arg)
        case IApp(fn, arg):
            return free_ind_vars(fn) | free_ind_vars(arg)
        case Lam(_, annot, body):
            return free_ind_vars(annot) | free_ind_vars(body)
        case ILam(v, body):
            return free_ind_vars(body) - {v}
        case Pair(l, r):
            return free_ind_vars(l) | free_ind_vars(r)
        case Proj(_, b):
            return free_ind_vars(b)
        case Inj(_, other, b):
            return free_ind_vars(other) | free_ind_vars(b)
        case Case(s, _, lb, _, rb):
            return free_ind_vars(s) | free_ind_vars(lb) | free_ind_vars(rb)
        case ExIntro(w, b, annot):
            return free_ind_vars(w) | free_ind_vars(b) | free_ind_vars(annot)
        case ExElim(s, iv, _, b):
            return free_ind_vars(s) | (free_ind_vars(b) - {iv})
        case Em0(p, _, l, r):
            return free_ind_vars(p) | free_ind_vars(l) | free_ind_vars(r)
        case Em1(_, iv, mat, l, r):
            return (free_ind_vars(mat) - {iv}) | free_ind_vars(l) | free_ind_vars(r)
        case Hyp(_, iv, mat) | Wit(_, iv, mat):
            return free_ind_vars(mat) - {iv}
        case Rec(b, s, m):
            return free_ind_vars(b) | free_ind_vars(s) | free_ind_vars(m)
        case Post(_, args):
            out = frozenset()
            for a in args:
                out |= free_ind_vars(a)
            return out
    raise TypeError(f"unexpected node: {x!r}")


def free_proof_vars(t: ProofTerm) -> frozenset[str]:
    match t:
        case ProofVar(name):
            return frozenset({name})
        case Hyp() | Wit() | Hypz() | Efq() | Markov() | Truth():
            return frozenset()
        case App(fn, arg):
            return free_proof_vars(fn) | free_proof_vars(arg)
        case IApp(fn, _):
            return free_proof_vars(fn)
        case Lam(v, _, body):
            return free_proof_vars(body) - {v}
        case ILam(_, body) | Proj(_, body) | Inj(_, _, body):
            return free_proof_vars(body)
        case Pair(l, r) | Em0(_, _, l, r) | Em1(_, _, _, l, r):
            return free_proof_vars(l) | free_proof_vars(r)
        case Case(s, lv, lb, rv, rb):
            return (free_proof_vars(s)
                    | (free_proof_vars(lb) - {lv})
                    | (free_proof_vars(rb) - {rv}))
        case ExIntro(_, b, _):
            return free_proof_vars(b)
        case ExElim(s, _, pv, b):
            return free_proof_vars(s) | (free_proof_vars(b) - {pv})
        case Rec(b, s, _):
            return free_proof_vars(b) | free_proof_vars(s)
        case Post(_, args):
            out = frozenset()
            for a in args:
                out |= free_proof_vars(a)
            return out
    raise TypeError(f"unexpected proof term: {t!r}")


def free_hyp_vars(t: ProofTerm) -> frozenset[str]:
    match t:
        case Hyp(h, _, _) | Wit(h, _, _):
            return frozenset({h})
        case ProofVar() | Hypz() | Efq() | Markov() | Truth():
            return frozenset()
        case App(fn, arg):
            return free_hyp_vars(fn) | free_hyp_vars(arg)
        case IApp(fn, _):
            return free_hyp_vars(fn)
        case Lam(_, _, body) | ILam(_, body) | Proj(_, body) | Inj(_, _, body):
            return free_hyp_vars(body)
        case Pair(l, r):
            return free_hyp_vars(l) | free_hyp_vars(r)
        case Case(s, _, lb, _, rb):
            return free_hyp_vars(s) | free_hyp_vars(lb) | free_hyp_vars(rb)
        case ExIntro(_, b, _):
            return free_hyp_vars(b)
        case ExElim(s, _, _, b):
            return free_hyp_vars(s) | free_hyp_vars(b)
        case Em0(_, h, l, r) | Em1(h, _, _, l, r):
            return (free_hyp_vars(l) | free_hyp_vars(r)) - {h}
        case Rec(b, s, _):
            return free_hyp_vars(b) | free_hyp_vars(s)
        case Post(_, args):
            out = frozenset()
            for a in args:
                out |= free_hyp_vars(a)
            return out
    raise TypeError(f"unexpected proof term: {t!r}")


# ---------------------------------------------------------------------------
# substitution of individual terms

def subst_ind(x, m: IndTerm, name: str):
    """Capture-avoiding substitution of `m` for the individual variable
    `name` in an individual term, formula or proof term."""
    if name not in free_ind_vars(x):
        return x
    fvm = free_ind_vars(m)

    def go_binder(v: str, body, rebuild):
        # v is an individual binder over `body`
        if v == name:
            return rebuild(v, body)
        if v in fvm:
            w = fresh_name(v, fvm | free_ind_vars(body) | {name})
            body = subst_ind(body, Var(w), v)
            return rebuild(w, subst_ind(body, m, name))
        return rebuild(v, subst_ind(body, m, name))

    match x:
        case Var(n):
            return m if n == name else x
        case Const() | Zero():
            return x
        case Succ(arg):
            return Succ(subst_ind(arg, m, name))
        case FnApp(fn, args):
            return FnApp(fn, tuple(subst_ind(a, m, name) for a in args))
        case Atom(p, args):
            return Atom(p, tuple(subst_ind(a, m, name) for a in args))
        case Bottom():
            return x
        case And(l, r):
            return And(subst_ind(l, m, name), subst_ind(r, m, name))
        case Or(l, r):
            return Or(subst_ind(l, m, name), subst_ind(r, m, name))
        case Imp(l, r):
            return Imp(subst_ind(l, m, name), subst_ind(r, m, name))
        case Forall(v, b):
            return go_binder(v, b, lambda w, bb: Forall(w, bb))
        case Exists(v, b):
            return go_binder(v, b, lambda w, bb: Exists(w, bb))
        # proof terms
        case ProofVar():
            return x
        case App(fn, arg):
            return App(subst_ind(fn, m, name), subst_ind(arg, m, name))
        case IApp(fn, arg):
            return IApp(subst_ind(fn, m, name), subst_ind(arg, m, name))
        case Lam(v, annot, body):
            return Lam(v, subst_ind(annot, m, name), subst_ind(body, m, name))
        case ILam(v, body):
            return go_binder(v, body, lambda w, bb: ILam(w, bb))
        case Pair(l, r):
            return Pair(subst_ind(l, m, name), subst_ind(r, m, name))
        case Proj(i, b):
            return Proj(i, subst_ind(b, m, name))
        case Inj(i, other, b):
            return Inj(i, subst_ind(other, m, name), subst_ind(b, m, name))
        case Case(s, lv, lb, rv, rb):
            return Case(subst_ind(s, m, name), lv, subst_ind(lb, m, name),
                        rv, subst_ind(rb, m, name))
        case ExIntro(w, b, annot):
            return ExIntro(subst_ind(w, m, name), subst_ind(b, m, name),
                           subst_ind(annot, m, name))
        case ExElim(s, iv, pv, b):
            s2 = subst_ind(s, m, name)
            if iv == name:
                return ExElim(s2, iv, pv, b)
            if iv in fvm and name in free_ind_vars(b):
                w = fresh_name(iv, fvm | free_ind_vars(b) | {name})
                b = subst_ind(b, Var(w), iv)
                return ExElim(s2, w, pv, subst_ind(b, m, name))
            return ExElim(s2, iv, pv, subst_ind(b, m, name))
        case Em0(p, h, l, r):
            return Em0(subst_ind(p, m, name), h, subst_ind(l, m, name),
                       subst_ind(r, m, name))
        case Em1(h, iv, mat, l, r):
            l2 = subst_ind(l, m, name)
            r2 = subst_ind(r, m, name)
            if iv == name:
                return Em1(h, iv, mat, l2, r2)
            if iv in fvm and name in free_ind_vars(mat):
                w = fresh_name(iv, fvm | free_ind_vars(mat) | {name})
                mat = subst_ind(mat, Var(w), iv)
                return Em1(h, w, subst_ind(mat, m, name), l2, r2)
            return Em1(h, iv, subst_ind(mat, m, name), l2, r2)
        case Hyp(h, iv, mat):
            if iv == name:
                return x
            if iv in fvm:
                w = fresh_name(iv, fvm | free_ind_vars(mat) | {name})
                mat = subst_ind(mat, Var(w), iv)
                return Hyp(h, w, subst_ind(mat, m, name))
            return Hyp(h, iv, subst_ind(mat, m, name))
        case Wit(h, iv, mat):
            if iv == name:
                return x
            if iv in fvm:
                w = fresh_name(iv, fvm | free_ind_vars(mat) | {name})
                mat = subst_ind(mat, Var(w), iv)
                return Wit(h, w, subst_ind(mat, m, name))
            return Wit(h, iv, subst_ind(mat, m, name))
        case Hypz(p):
            return Hypz(subst_ind(p, m, name))
        case Efq(p):
            return Efq(subst_ind(p, m, name))
        case Markov(tgt):
            return Markov(subst_ind(tgt, m, name))
        case Truth():
            return x
        case Rec(b, s, arg):
            return Rec(subst_ind(b, m, name), subst_ind(s, m, name),
                       subst_ind(arg, m, name))
        case Post(rule, args):
            return Post(rule, tuple(subst_ind(a, m, name) for a in args))
    raise TypeError(f"unexpected node: {x!r}")


# ---------------------------------------------------------------------------
# renaming of hypothesis variables

def rename_hyp_var(t: ProofTerm, old: str, new: str) -> ProofTerm:
    """Rename free occurrences of the hypothesis variable `old` to `new`,
    freshening any binder for `new` that would capture them."""
    if old == new or old not in free_hyp_vars(t):
        return t
    match t:
        case Hyp(h, iv, mat):
            return Hyp(new if h == old else h, iv, mat)
        case Wit(h, iv, mat):
            return Wit(new if h == old else h, iv, mat)
        case Em0(p, h, l, r):
            if h == old:
                return t  # inner binder shadows; no free occurrences below
            if h == new:
                h2 = fresh_name(h, free_hyp_vars(l) | free_hyp_vars(r) | {old, new})
                l = rename_hyp_var(l, h, h2)
                r = rename_hyp_var(r, h, h2)
                h = h2
            return Em0(p, h, rename_hyp_var(l, old, new), rename_hyp_var(r, old, new))
        case Em1(h, iv, mat, l, r):
            if h == old:
                return t
            if h == new:
                h2 = fresh_name(h, free_hyp_vars(l) | free_hyp_vars(r) | {old, new})
                l = rename_hyp_var(l, h, h2)
                r = rename_hyp_var(r, h, h2)
                h = h2
            return Em1(h, iv, mat, rename_hyp_var(l, old, new), rename_hyp_var(r, old, new))
        case App(fn, arg):
            return App(rename_hyp_var(fn, old, new), rename_hyp_var(arg, old, new))
        case IApp(fn, arg):
            return IApp(rename_hyp_var(fn, old, new), arg)
        case Lam(v, annot, body):
            return Lam(v, annot, rename_hyp_var(body, old, new))
        case ILam(v, body):
            return ILam(v, rename_hyp_var(body, old, new))
        case Pair(l, r):
            return Pair(rename_hyp_var(l, old, new), rename_hyp_var(r, old, new))
        case Proj(i, b):
            return Proj(i, rename_hyp_var(b, old, new))
        case Inj(i, other, b):
            return Inj(i, other, rename_hyp_var(b, old, new))
        case Case(s, lv, lb, rv, rb):
            return Case(rename_hyp_var(s, old, new), lv, rename_hyp_var(lb, old, new),
                        rv, rename_hyp_var(rb, old, new))
        case ExIntro(w, b, annot):
            return ExIntro(w, rename_hyp_var(b, old, new), annot)
        case ExElim(s, iv, pv, b):
            return ExElim(rename_hyp_var(s, old, new), iv, pv,
                          rename_hyp_var(b, old, new))
        case Rec(b, s, arg):
            return Rec(rename_hyp_var(b, old, new), rename_hyp_var(s, old, new), arg)
        case Post(rule, args):
            return Post(rule, tuple(rename_hyp_var(a, old, new) for a in args))
    raise TypeError(f"unexpected proof term: {t!r}")


# ---------------------------------------------------------------------------
# substitution of proof terms

def subst_proof(t: ProofTerm, u: ProofTerm, name: str) -> ProofTerm:
    """Capture-avoiding substitution of the proof term `u` for the proof
    variable `name` in `t`."""
    if name not in free_proof_vars(t):
        return t
    fv_p = free_proof_vars(u)
    fv_i = free_ind_vars(u)
    fv_h = free_hyp_vars(u)

    def go(t: ProofTerm) -> ProofTerm:
        return subst_proof(t, u, name)

    def pbinder(v: str, body: ProofTerm) -> tuple[str, ProofTerm, bool]:
        # returns (binder, body, shadowed)
        if v == name:
            return v, body, True
        if v in fv_p and name in free_proof_vars(body):
            w = fresh_name(v, fv_p | free_proof_vars(body) | {name})
            return w, subst_proof(body, ProofVar(w), v), False
        return v, body, False

    def ibinder(v: str, body: ProofTerm) -> tuple[str, ProofTerm]:
        if v in fv_i and name in free_proof_vars(body):
            w = fresh_name(v, fv_i | free_ind_vars(body))
            return w, subst_ind(body, Var(w), v)
        return v, body

    def hbinder(v: str, left: ProofTerm, right: ProofTerm) -> tuple[str, ProofTerm, ProofTerm]:
        if v in fv_h and name in (free_proof_vars(left) | free_proof_vars(right)):
            w = fresh_name(v, fv_h | free_hyp_vars(left) | free_hyp_vars(right))
            return w, rename_hyp_var(left, v, w), rename_hyp_var(right, v, w)
        return v, left, right

    match t:
        case ProofVar(n):
            return u if n == name else t
        case App(fn, arg):
            return App(go(fn), go(arg))
        case IApp(fn, arg):
            return IApp(go(fn), arg)
        case Lam(v, annot, body):
            v, body, shadowed = pbinder(v, body)
            return t if shadowed else Lam(v, annot, go(body))
        case ILam(v, body):
            v, body = ibinder(v, body)
            return ILam(v, go(body))
        case Pair(l, r):
            return Pair(go(l), go(r))
        case Proj(i, b):
            return Proj(i, go(b))
        case Inj(i, other, b):
            return Inj(i, other, go(b))
        case Case(s, lv, lb, rv, rb):
            s = go(s)
            lv, lb, lsh = pbinder(lv, lb)
            rv, rb, rsh = pbinder(rv, rb)
            return Case(s, lv, lb if lsh else go(lb), rv, rb if rsh else go(rb))
        case ExIntro(w, b, annot):
            return ExIntro(w, go(b), annot)
        case ExElim(s, iv, pv, b):
            s = go(s)
            iv, b = ibinder(iv, b)
            pv, b, shadowed = pbinder(pv, b)
            return ExElim(s, iv, pv, b if shadowed else go(b))
        case Em0(p, h, l, r):
            h, l, r = hbinder(h, l, r)
            return Em0(p, h, go(l), go(r))
        case Em1(h, iv, mat, l, r):
            h, l, r = hbinder(h, l, r)
            return Em1(h, iv, mat, go(l), go(r))
        case Rec(b, s, arg):
            return Rec(go(b), go(s), arg)
        case Post(rule, args):
            return Post(rule, tuple(go(a) for a in args))
        case Hyp() | Wit() | Hypz() | Efq() | Markov() | Truth():
            return t
    raise TypeError(f"unexpected proof term: {t!r}")


# ---------------------------------------------------------------------------
# alpha equivalence

def alpha_eq(a, b) -> bool:
    """Alpha-equivalence over individual terms, formulas and proof terms."""
    return _alpha(a, b, {}, {}, {})


def _lk(env: dict, n: str) -> str:
    return env.get(n, n)


def _alpha(a, b, ienv: dict, penv: dict, henv: dict) -> bool:
    if type(a) is not type(b):
        return False
    match a, b:
        case Var(x), Var(y):
            return _lk(ienv, x) == y
        case (Const(x), Const(y)):
            return x == y
        case (Zero(), Zero()) | (Bottom(), Bottom()) | (Truth(), Truth()):
            return True
        case Succ(x), Succ(y):
            return _alpha(x, y, ienv, penv, henv)
        case FnApp(f, xs), FnApp(g, ys):
            return f == g and len(xs) == len(ys) and all(
                _alpha(x, y, ienv, penv, henv) for x, y in zip(xs, ys))
        case Atom(p, xs), Atom(q, ys):
            return p == q and len(xs) == len(ys) and all(
                _alpha(x, y, ienv, penv, henv) for x, y in zip(xs, ys))
        case (And(l1, r1), And(l2, r2)) | (Or(l1, r1), Or(l2, r2)) | (Imp(l1, r1), Imp(l2, r2)):
            return _alpha(l1, l2, ienv, penv, henv) and _alpha(r1, r2, ienv, penv, henv)
        case (Forall(v1, b1), Forall(v2, b2)) | (Exists(v1, b1), Exists(v2, b2)):
            return _alpha(b1, b2, {**ienv, v1: v2}, penv, henv)
        case ProofVar(x), ProofVar(y):
            return _lk(penv, x) == y
        case App(f1, a1), App(f2, a2):
            return _alpha(f1, f2, ienv, penv, henv) and _alpha(a1, a2, ienv, penv, henv)
        case IApp(f1, a1), IApp(f2, a2):
            return _alpha(f1, f2, ienv, penv, henv) and _alpha(a1, a2, ienv, penv, henv)
        case Lam(v1, t1, b1), Lam(v2, t2, b2):
            return (_alpha(t1, t2, ienv, penv, henv)
                    and _alpha(b1, b2, ienv, {**penv, v1: v2}, henv))
        case ILam(v1, b1), ILam(v2, b2):
            return _alpha(b1, b2, {**ienv, v1: v2}, penv, henv)
        case Pair(l1, r1), Pair(l2, r2):
            return _alpha(l1, l2, ienv, penv, henv) and _alpha(r1, r2, ienv, penv, henv)
        case Proj(i, b1), Proj(j, b2):
            return i == j and _alpha(b1, b2, ienv, penv, henv)
        case Inj(i, o1, b1), Inj(j, o2, b2):
            return (i == j and _alpha(o1, o2, ienv, penv, henv)
                    and _alpha(b1, b2, ienv, penv, henv))
        case Case(s1, lv1, lb1, rv1, rb1), Case(s2, lv2, lb2, rv2, rb2):
            return (_alpha(s1, s2, ienv, penv, henv)
                    and _alpha(lb1, lb2, ienv, {**penv, lv1: lv2}, henv)
                    and _alpha(rb1, rb2, ienv, {**penv, rv1: rv2}, henv))
        case ExIntro(w1, b1, t1), ExIntro(w2, b2, t2):
            return (_alpha(w1, w2, ienv, penv, henv)
                    and _alpha(b1, b2, ienv, penv, henv)
                    and _alpha(t1, t2, ienv, penv, henv))
        case ExElim(s1, iv1, pv1, b1), ExElim(s2, iv2, pv2, b2):
            return (_alpha(s1, s2, ienv, penv, henv)
                    and _alpha(b1, b2, {**ienv, iv1: iv2}, {**penv, pv1: pv2}, henv))
        case Em0(p1, h1, l1, r1), Em0(p2, h2, l2, r2):
            henv2 = {**henv, h1: h2}
            return (_alpha(p1, p2, ienv, penv, henv)
                    and _alpha(l1, l2, ienv, penv, henv2)
                    and _alpha(r1, r2, ienv, penv, henv2))
        case Em1(h1, iv1, m1, l1, r1), Em1(h2, iv2, m2, l2, r2):
            henv2 = {**henv, h1: h2}
            return (_alpha(m1, m2, {**ienv, iv1: iv2}, penv, henv)
                    and _alpha(l1, l2, ienv, penv, henv2)
                    and _alpha(r1, r2, ienv, penv, henv2))
        case (Hyp(h1, iv1, m1), Hyp(h2, iv2, m2)) | (Wit(h1, iv1, m1), Wit(h2, iv2, m2)):
            return (_lk(henv, h1) == h2
                    and _alpha(m1, m2, {**ienv, iv1: iv2}, penv, henv))
        case (Hypz(p1), Hypz(p2)) | (Efq(p1), Efq(p2)) | (Markov(p1), Markov(p2)):
            return _alpha(p1, p2, ienv, penv, henv)
        case Rec(b1, s1, m1), Rec(b2, s2, m2):
            return (_alpha(b1, b2, ienv, penv, henv)
                    and _alpha(s1, s2, ienv, penv, henv)
                    and _alpha(m1, m2, ienv, penv, henv))
        case Post(r1, a1), Post(r2, a2):
            return r1 == r2 and len(a1) == len(a2) and all(
                _alpha(x, y, ienv, penv, henv) for x, y in zip(a1, a2))
    return False


# ---------------------------------------------------------------------------
# formula classification

@dataclass(frozen=True)
class Classification:
    propositional: bool
    negative: bool
    simply_universal: bool
    simply_existential: bool


def is_propositional(a: Formula) -> bool:
    match a:
        case Atom() | Bottom():
            return True
        case And(l, r) | Or(l, r) | Imp(l, r):
            return is_propositional(l) and is_propositional(r)
    return False


def is_or_free(a: Formula) -> bool:
    match a:
        case Atom() | Bottom():
            return True
        case Or():
            return False
        case And(l, r) | Imp(l, r):
            return is_or_free(l) and is_or_free(r)
        case Forall(_, b) | Exists(_, b):
            return is_or_free(b)
    return False


def is_negative(a: Formula) -> bool:
    return is_propositional(a) and is_or_free(a)


def is_simply_universal(a: Formula) -> bool:
    while isinstance(a, Forall):
        a = a.body
    return is_negative(a)


def is_simply_existential(a: Formula) -> bool:
    return isinstance(a, Exists) and is_propositional(a.body)


def classify(a: Formula) -> Classification:
    """Classify a formula: quantifier-free, or-free, universal prefix over a
    negative matrix, single existential over a propositional matrix."""
    return Classification(
        propositional=is_propositional(a),
        negative=is_negative(a),
        simply_universal=is_simply_universal(a),
        simply_existential=is_simply_existential(a),
    )


def is_arrow_free(a: Formula) -> bool:
    match a:
        case Atom() | Bottom():
            return True
        case Imp():
            return False
        case And(l, r) | Or(l, r):
            return is_arrow_free(l) and is_arrow_free(r)
        case Forall(_, b) | Exists(_, b):
            return is_arrow_free(b)
    return False


# ---------------------------------------------------------------------------
# negative translation

def godel_gentzen(a: Formula) -> Formula:
    """Standard negative translation: atoms (including absurdity) are double
    negated, disjunction and existence go through their De Morgan duals, the
    remaining connectives are translated homomorphically."""
    match a:
        case Atom() | Bottom():
            return Not(Not(a))
        case And(l, r):
            return And(godel_gentzen(l), godel_gentzen(r))
        case Imp(l, r):
            return Imp(godel_gentzen(l), godel_gentzen(r))
        case Or(l, r):
            return Not(And(Not(godel_gentzen(l)), Not(godel_gentzen(r))))
        case Forall(v, b):
            return Forall(v, godel_gentzen(b))
        case Exists(v, b):
            return Not(Forall(v, Not(godel_gentzen(b))))
    raise TypeError(f"unexpected formula: {a!r}")


# ---------------------------------------------------------------------------
# misc structure helpers

def proof_size(t: ProofTerm) -> int:
    """Number of proof-term nodes (formulas and individual terms not counted)."""
    return 1 + sum(proof_size(c) for _, c in proof_children(t))


def proof_children(t: ProofTerm) -> list[tuple[str, ProofTerm]]:
    """Immediate proof-term children with edge labels, in traversal order."""
    match t:
        case App(fn, arg):
            return [("fn", fn), ("arg", arg)]
        case IApp(fn, _):
            return [("fn", fn)]
        case Lam(_, _, body) | ILam(_, body):
            return [("body", body)]
        case Pair(l, r):
            return [("left", l), ("right", r)]
        case Proj(_, b) | Inj(_, _, b):
            return [("body", b)]
        case Case(s, _, lb, _, rb):
            return [("scrut", s), ("left", lb), ("right", rb)]
        case ExIntro(_, b, _):
            return [("body", b)]
        case ExElim(s, _, _, b):
            return [("scrut", s), ("body", b)]
        case Em0(_, _, l, r) | Em1(_, _, _, l, r):
            return [("left", l), ("right", r)]
        case Rec(b, s, _):
            return [("base", b), ("step", s)]
        case Post(_, args):
            return [(f"arg{i}", a) for i, a in enumerate(args)]
    return []


def replace_child(t: ProofTerm, label: str, new: ProofTerm) -> ProofTerm:
    match t, label:
        case App(_, arg), "fn":
            return App(new, arg)
        case App(fn, _), "arg":
            return App(fn, new)
        case IApp(_, arg), "fn":
            return IApp(new, arg)
        case Lam(v, annot, _), "body":
            return Lam(v, annot, new)
        case ILam(v, _), "body":
            return ILam(v, new)
        case Pair(_, r), "left":
            return Pair(new, r)
        case Pair(l, _), "right":
            return Pair(l, new)
        case Proj(i, _), "body":
            return Proj(i, new)
        case Inj(i, other, _), "body":
            return Inj(i, other, new)
        case Case(_, lv, lb, rv, rb), "scrut":
            return Case(new, lv, lb, rv, rb)
        case Case(s, lv, _, rv, rb), "left":
            return Case(s, lv, new, rv, rb)
        case Case(s, lv, lb, rv, _), "right":
            return Case(s, lv, lb, rv, new)
        case ExIntro(w, _, annot), "body":
            return ExIntro(w, new, annot)
        case ExElim(_, iv, pv, b), "scrut":
            return ExElim(new, iv, pv, b)
        case ExElim(s, iv, pv, _), "body":
            return ExElim(s, iv, pv, new)
        case Em0(p, h, _, r), "left":
            return Em0(p, h, new, r)
        case Em0(p, h, l, _), "right":
            return Em0(p, h, l, new)
        case Em1(h, iv, mat, _, r), "left":
            return Em1(h, iv, mat, new, r)
        case Em1(h, iv, mat, l, _), "right":
            return Em1(h, iv, mat, l, new)
        case Rec(_, s, m), "base":
            return Rec(new, s, m)
        case Rec(b, _, m), "step":
            return Rec(b, new, m)
        case Post(rule, args), _ if label.startswith("arg"):
            i = int(label[3:])
            return Post(rule, args[:i] + (new,) + args[i + 1:])
    raise ValueError(f"no child {label!r} in {type(t).__name__}")


def subterm_at(t: ProofTerm, path: tuple[str, ...]) -> ProofTerm:
    for label in path:
        for lab, child in proof_children(t):
            if lab == label:
                t = child
                break
        else:
            raise ValueError(f"no child {label!r} in {type(t).__name__}")
    return t
