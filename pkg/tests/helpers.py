"""Shared test machinery: independent oracles and generators.

The substitution oracle renames every bound variable to a globally fresh
name and then substitutes naively; fresh names cannot capture, so the
result is correct by construction and independent of the kernel's own
capture-avoidance logic.
"""

from __future__ import annotations

import itertools
import random

from herbrand.syntax import (
    And, App, Atom, Bottom, Case, Const, Context, CtxEntry, Efq, Em0, Em1,
    ExElim, ExIntro, Exists, FnApp, Forall, Formula, Hyp, Hypz, IApp, ILam,
    Imp, IndTerm, Inj, Lam, Markov, Not, Or, Pair, Post, Proj, ProofTerm,
    ProofVar, Rec, Signature, Succ, Truth, Var, Wit, Zero, proof_children,
    replace_child,
)

# ---------------------------------------------------------------------------
# naive substitution oracle

_counter = itertools.count(1)


def gensym(prefix: str = "g") -> str:
    return f"{prefix}_{next(_counter)}"


def rename_free_ind(x, old: str, new: str):
    """Naive renaming of a free individual variable; `new` must be fresh."""
    match x:
        case Var(n):
            return Var(new) if n == old else x
        case Const() | Zero() | Bottom() | ProofVar() | Truth():
            return x
        case Succ(a):
            return Succ(rename_free_ind(a, old, new))
        case FnApp(f, args):
            return FnApp(f, tuple(rename_free_ind(a, old, new) for a in args))
        case Atom(p, args):
            return Atom(p, tuple(rename_free_ind(a, old, new) for a in args))
        case And(l, r):
            return And(rename_free_ind(l, old, new), rename_free_ind(r, old, new))
        case Or(l, r):
            return Or(rename_free_ind(l, old, new), rename_free_ind(r, old, new))
        case Imp(l, r):
            return Imp(rename_free_ind(l, old, new), rename_free_ind(r, old, new))
        case Forall(v, b):
            return x if v == old else Forall(v, rename_free_ind(b, old, new))
        case Exists(v, b):
            return x if v == old else Exists(v, rename_free_ind(b, old, new))
        case App(f, a):
            return App(rename_free_ind(f, old, new), rename_free_ind(a, old, new))
        case IApp(f, a):
            return IApp(rename_free_ind(f, old, new), rename_free_ind(a, old, new))
        case Lam(v, t, b):
            return Lam(v, rename_free_ind(t, old, new), rename_free_ind(b, old, new))
        case ILam(v, b):
            return x if v == old else ILam(v, rename_free_ind(b, old, new))
        case Pair(l, r):
            return Pair(rename_free_ind(l, old, new), rename_free_ind(r, old, new))
        case Proj(i, b):
            return Proj(i, rename_free_ind(b, old, new))
        case Inj(i, o, b):
            return Inj(i, rename_free_ind(o, old, new), rename_free_ind(b, old, new))
        case Case(s, lv, lb, rv, rb):
            return Case(rename_free_ind(s, old, new), lv,
                        rename_free_ind(lb, old, new), rv,
                        rename_free_ind(rb, old, new))
        case ExIntro(w, b, a):
            return ExIntro(rename_free_ind(w, old, new),
                           rename_free_ind(b, old, new),
                           rename_free_ind(a, old, new))
        case ExElim(s, iv, pv, b):
            s2 = rename_free_ind(s, old, new)
            if iv == old:
                return ExElim(s2, iv, pv, b)
            return ExElim(s2, iv, pv, rename_free_ind(b, old, new))
        case Em0(p, h, l, r):
            return Em0(rename_free_ind(p, old, new), h,
                       rename_free_ind(l, old, new), rename_free_ind(r, old, new))
        case Em1(h, iv, m, l, r):
            m2 = m if iv == old else rename_free_ind(m, old, new)
            return Em1(h, iv, m2, rename_free_ind(l, old, new),
                       rename_free_ind(r, old, new))
        case Hyp(h, iv, m):
            return x if iv == old else Hyp(h, iv, rename_free_ind(m, old, new))
        case Wit(h, iv, m):
            return x if iv == old else Wit(h, iv, rename_free_ind(m, old, new))
        case Hypz(p):
            return Hypz(rename_free_ind(p, old, new))
        case Efq(p):
            return Efq(rename_free_ind(p, old, new))
        case Markov(t):
            return Markov(rename_free_ind(t, old, new))
        case Rec(b, s, m):
            return Rec(rename_free_ind(b, old, new), rename_free_ind(s, old, new),
                       rename_free_ind(m, old, new))
        case Post(r, args):
            return Post(r, tuple(rename_free_ind(a, old, new) for a in args))
    raise TypeError(f"unexpected node {x!r}")


def rename_free_proof(t, old: str, new: str):
    match t:
        case ProofVar(n):
            return ProofVar(new) if n == old else t
        case Lam(v, a, b):
            return t if v == old else Lam(v, a, rename_free_proof(b, old, new))
        case Case(s, lv, lb, rv, rb):
            s2 = rename_free_proof(s, old, new)
            lb2 = lb if lv == old else rename_free_proof(lb, old, new)
            rb2 = rb if rv == old else rename_free_proof(rb, old, new)
            return Case(s2, lv, lb2, rv, rb2)
        case ExElim(s, iv, pv, b):
            s2 = rename_free_proof(s, old, new)
            return ExElim(s2, iv, pv,
                          b if pv == old else rename_free_proof(b, old, new))
    out = t
    for label, child in proof_children(t):
        out = replace_child(out, label, rename_free_proof(child, old, new))
    return out


def rename_free_hyp(t, old: str, new: str):
    match t:
        case Hyp(h, iv, m):
            return Hyp(new, iv, m) if h == old else t
        case Wit(h, iv, m):
            return Wit(new, iv, m) if h == old else t
        case Em0(p, h, l, r):
            if h == old:
                return t
            return Em0(p, h, rename_free_hyp(l, old, new),
                       rename_free_hyp(r, old, new))
        case Em1(h, iv, m, l, r):
            if h == old:
                return t
            return Em1(h, iv, m, rename_free_hyp(l, old, new),
                       rename_free_hyp(r, old, new))
    out = t
    for label, child in proof_children(t):
        out = replace_child(out, label, rename_free_hyp(child, old, new))
    return out


def freshen_all(x):
    """Rename every bound variable (all three namespaces) to a globally
    fresh name; the result is alpha-equivalent to the input."""
    match x:
        case Forall(v, b):
            v2 = gensym(v)
            return Forall(v2, freshen_all(rename_free_ind(b, v, v2)))
        case Exists(v, b):
            v2 = gensym(v)
            return Exists(v2, freshen_all(rename_free_ind(b, v, v2)))
        case ILam(v, b):
            v2 = gensym(v)
            return ILam(v2, freshen_all(rename_free_ind(b, v, v2)))
        case Lam(v, a, b):
            v2 = gensym(v)
            return Lam(v2, freshen_all(a), freshen_all(rename_free_proof(b, v, v2)))
        case Case(s, lv, lb, rv, rb):
            lv2, rv2 = gensym(lv), gensym(rv)
            return Case(freshen_all(s),
                        lv2, freshen_all(rename_free_proof(lb, lv, lv2)),
                        rv2, freshen_all(rename_free_proof(rb, rv, rv2)))
        case ExElim(s, iv, pv, b):
            iv2, pv2 = gensym(iv), gensym(pv)
            b2 = rename_free_proof(rename_free_ind(b, iv, iv2), pv, pv2)
            return ExElim(freshen_all(s), iv2, pv2, freshen_all(b2))
        case Em0(p, h, l, r):
            h2 = gensym(h)
            return Em0(freshen_all(p), h2,
                       freshen_all(rename_free_hyp(l, h, h2)),
                       freshen_all(rename_free_hyp(r, h, h2)))
        case Em1(h, iv, m, l, r):
            h2, iv2 = gensym(h), gensym(iv)
            return Em1(h2, iv2, freshen_all(rename_free_ind(m, iv, iv2)),
                       freshen_all(rename_free_hyp(l, h, h2)),
                       freshen_all(rename_free_hyp(r, h, h2)))
        case Hyp(h, iv, m):
            iv2 = gensym(iv)
            return Hyp(h, iv2, freshen_all(rename_free_ind(m, iv, iv2)))
        case Wit(h, iv, m):
            iv2 = gensym(iv)
            return Wit(h, iv2, freshen_all(rename_free_ind(m, iv, iv2)))
        case And(l, r):
            return And(freshen_all(l), freshen_all(r))
        case Or(l, r):
            return Or(freshen_all(l), freshen_all(r))
        case Imp(l, r):
            return Imp(freshen_all(l), freshen_all(r))
        case App(f, a):
            return App(freshen_all(f), freshen_all(a))
        case IApp(f, a):
            return IApp(freshen_all(f), a)
        case Pair(l, r):
            return Pair(freshen_all(l), freshen_all(r))
        case Proj(i, b):
            return Proj(i, freshen_all(b))
        case Inj(i, o, b):
            return Inj(i, freshen_all(o), freshen_all(b))
        case ExIntro(w, b, a):
            return ExIntro(w, freshen_all(b), freshen_all(a))
        case Hypz(p):
            return Hypz(freshen_all(p))
        case Efq(p):
            return Efq(freshen_all(p))
        case Markov(t):
            return Markov(freshen_all(t))
        case Rec(b, s, m):
            return Rec(freshen_all(b), freshen_all(s), m)
        case Post(r, args):
            return Post(r, tuple(freshen_all(a) for a in args))
    return x


def naive_subst_ind(x, m, name):
    """Plain replacement of a free individual variable; correct only when no
    bound variable of x occurs free in m (ensured by freshen_all)."""
    match x:
        case Var(n):
            return m if n == name else x
        case Forall(v, b):
            return x if v == name else Forall(v, naive_subst_ind(b, m, name))
        case Exists(v, b):
            return x if v == name else Exists(v, naive_subst_ind(b, m, name))
        case ILam(v, b):
            return x if v == name else ILam(v, naive_subst_ind(b, m, name))
        case ExElim(s, iv, pv, b):
            s2 = naive_subst_ind(s, m, name)
            if iv == name:
                return ExElim(s2, iv, pv, b)
            return ExElim(s2, iv, pv, naive_subst_ind(b, m, name))
        case Em1(h, iv, mat, l, r):
            mat2 = mat if iv == name else naive_subst_ind(mat, m, name)
            return Em1(h, iv, mat2, naive_subst_ind(l, m, name),
                       naive_subst_ind(r, m, name))
        case Hyp(h, iv, mat):
            return x if iv == name else Hyp(h, iv, naive_subst_ind(mat, m, name))
        case Wit(h, iv, mat):
            return x if iv == name else Wit(h, iv, naive_subst_ind(mat, m, name))
        case Const() | Zero() | Bottom() | ProofVar() | Truth():
            return x
        case Succ(a):
            return Succ(naive_subst_ind(a, m, name))
        case FnApp(f, args):
            return FnApp(f, tuple(naive_subst_ind(a, m, name) for a in args))
        case Atom(p, args):
            return Atom(p, tuple(naive_subst_ind(a, m, name) for a in args))
        case And(l, r):
            return And(naive_subst_ind(l, m, name), naive_subst_ind(r, m, name))
        case Or(l, r):
            return Or(naive_subst_ind(l, m, name), naive_subst_ind(r, m, name))
        case Imp(l, r):
            return Imp(naive_subst_ind(l, m, name), naive_subst_ind(r, m, name))
        case App(f, a):
            return App(naive_subst_ind(f, m, name), naive_subst_ind(a, m, name))
        case IApp(f, a):
            return IApp(naive_subst_ind(f, m, name), naive_subst_ind(a, m, name))
        case Lam(v, t, b):
            return Lam(v, naive_subst_ind(t, m, name), naive_subst_ind(b, m, name))
        case Pair(l, r):
            return Pair(naive_subst_ind(l, m, name), naive_subst_ind(r, m, name))
        case Proj(i, b):
            return Proj(i, naive_subst_ind(b, m, name))
        case Inj(i, o, b):
            return Inj(i, naive_subst_ind(o, m, name), naive_subst_ind(b, m, name))
        case Case(s, lv, lb, rv, rb):
            return Case(naive_subst_ind(s, m, name), lv,
                        naive_subst_ind(lb, m, name), rv,
                        naive_subst_ind(rb, m, name))
        case ExIntro(w, b, a):
            return ExIntro(naive_subst_ind(w, m, name), naive_subst_ind(b, m, name),
                           naive_subst_ind(a, m, name))
        case Em0(p, h, l, r):
            return Em0(naive_subst_ind(p, m, name), h, naive_subst_ind(l, m, name),
                       naive_subst_ind(r, m, name))
        case Hypz(p):
            return Hypz(naive_subst_ind(p, m, name))
        case Efq(p):
            return Efq(naive_subst_ind(p, m, name))
        case Markov(t):
            return Markov(naive_subst_ind(t, m, name))
        case Rec(b, s, arg):
            return Rec(naive_subst_ind(b, m, name), naive_subst_ind(s, m, name),
                       naive_subst_ind(arg, m, name))
        case Post(r, args):
            return Post(r, tuple(naive_subst_ind(a, m, name) for a in args))
    raise TypeError(f"unexpected node {x!r}")


def naive_subst_proof(t, u, name):
    match t:
        case ProofVar(n):
            return u if n == name else t
        case Lam(v, a, b):
            return t if v == name else Lam(v, a, naive_subst_proof(b, u, name))
        case Case(s, lv, lb, rv, rb):
            s2 = naive_subst_proof(s, u, name)
            lb2 = lb if lv == name else naive_subst_proof(lb, u, name)
            rb2 = rb if rv == name else naive_subst_proof(rb, u, name)
            return Case(s2, lv, lb2, rv, rb2)
        case ExElim(s, iv, pv, b):
            s2 = naive_subst_proof(s, u, name)
            return ExElim(s2, iv, pv,
                          b if pv == name else naive_subst_proof(b, u, name))
    out = t
    for label, child in proof_children(t):
        out = replace_child(out, label, naive_subst_proof(child, u, name))
    return out


def oracle_subst_ind(x, m, name):
    """Reference capture-avoiding substitution: freshen then replace."""
    return naive_subst_ind(freshen_all(x), m, name)


def oracle_subst_proof(t, u, name):
    return naive_subst_proof(freshen_all(t), u, name)


# ---------------------------------------------------------------------------
# propositional truth tables

def prop_atoms(f) -> list:
    match f:
        case Atom():
            return [f]
        case Bottom():
            return []
        case And(l, r) | Or(l, r) | Imp(l, r):
            out = prop_atoms(l)
            for a in prop_atoms(r):
                if a not in out:
                    out.append(a)
            return out
    raise ValueError(f"not propositional: {f!r}")


def prop_eval(f, valuation: dict) -> bool:
    match f:
        case Atom():
            return valuation[f]
        case Bottom():
            return False
        case And(l, r):
            return prop_eval(l, valuation) and prop_eval(r, valuation)
        case Or(l, r):
            return prop_eval(l, valuation) or prop_eval(r, valuation)
        case Imp(l, r):
            return (not prop_eval(l, valuation)) or prop_eval(r, valuation)
    raise ValueError(f"not propositional: {f!r}")


def classically_equivalent(f, g) -> bool:
    """Truth-table equivalence of two propositional formulas."""
    atoms = prop_atoms(f)
    for a in prop_atoms(g):
        if a not in atoms:
            atoms.append(a)
    for bits in itertools.product([False, True], repeat=len(atoms)):
        val = dict(zip(atoms, bits))
        if prop_eval(f, val) != prop_eval(g, val):
            return False
    return True


# ---------------------------------------------------------------------------
# canonical alpha form

def canon(x, ienv=None, penv=None, henv=None, counter=None):
    """Nested-tuple form with binders numbered in traversal order; equal
    results exactly for alpha-equivalent inputs."""
    ienv = ienv or {}
    penv = penv or {}
    henv = henv or {}
    counter = counter if counter is not None else itertools.count()

    def go(x, ienv, penv, henv):
        match x:
            case Var(n):
                return ("var", ienv.get(n, n))
            case Const(n):
                return ("const", n)
            case Zero():
                return ("zero",)
            case Succ(a):
                return ("succ", go(a, ienv, penv, henv))
            case FnApp(f, args):
                return ("fn", f, tuple(go(a, ienv, penv, henv) for a in args))
            case Atom(p, args):
                return ("atom", p, tuple(go(a, ienv, penv, henv) for a in args))
            case Bottom():
                return ("bot",)
            case And(l, r):
                return ("and", go(l, ienv, penv, henv), go(r, ienv, penv, henv))
            case Or(l, r):
                return ("or", go(l, ienv, penv, henv), go(r, ienv, penv, henv))
            case Imp(l, r):
                return ("imp", go(l, ienv, penv, henv), go(r, ienv, penv, henv))
            case Forall(v, b):
                k = next(counter)
                return ("all", go(b, {**ienv, v: k}, penv, henv))
            case Exists(v, b):
                k = next(counter)
                return ("ex", go(b, {**ienv, v: k}, penv, henv))
            case ProofVar(n):
                return ("pvar", penv.get(n, n))
            case App(f, a):
                return ("app", go(f, ienv, penv, henv), go(a, ienv, penv, henv))
            case IApp(f, a):
                return ("iapp", go(f, ienv, penv, henv), go(a, ienv, penv, henv))
            case Lam(v, t, b):
                k = next(counter)
                return ("lam", go(t, ienv, penv, henv),
                        go(b, ienv, {**penv, v: k}, henv))
            case ILam(v, b):
                k = next(counter)
                return ("ilam", go(b, {**ienv, v: k}, penv, henv))
            case Pair(l, r):
                return ("pair", go(l, ienv, penv, henv), go(r, ienv, penv, henv))
            case Proj(i, b):
                return ("proj", i, go(b, ienv, penv, henv))
            case Inj(i, o, b):
                return ("inj", i, go(o, ienv, penv, henv), go(b, ienv, penv, henv))
            case Case(s, lv, lb, rv, rb):
                k1, k2 = next(counter), next(counter)
                return ("case", go(s, ienv, penv, henv),
                        go(lb, ienv, {**penv, lv: k1}, henv),
                        go(rb, ienv, {**penv, rv: k2}, henv))
            case ExIntro(w, b, a):
                return ("exi", go(w, ienv, penv, henv), go(b, ienv, penv, henv),
                        go(a, ienv, penv, henv))
            case ExElim(s, iv, pv, b):
                k1, k2 = next(counter), next(counter)
                return ("dest", go(s, ienv, penv, henv),
                        go(b, {**ienv, iv: k1}, {**penv, pv: k2}, henv))
            case Em0(p, h, l, r):
                k = next(counter)
                henv2 = {**henv, h: k}
                return ("em0", go(p, ienv, penv, henv),
                        go(l, ienv, penv, henv2), go(r, ienv, penv, henv2))
            case Em1(h, iv, m, l, r):
                k, ki = next(counter), next(counter)
                henv2 = {**henv, h: k}
                return ("em1", go(m, {**ienv, iv: ki}, penv, henv),
                        go(l, ienv, penv, henv2), go(r, ienv, penv, henv2))
            case Hyp(h, iv, m):
                k = next(counter)
                return ("hyp", henv.get(h, h), go(m, {**ienv, iv: k}, penv, henv))
            case Wit(h, iv, m):
                k = next(counter)
                return ("wit", henv.get(h, h), go(m, {**ienv, iv: k}, penv, henv))
            case Hypz(p):
                return ("hypz", go(p, ienv, penv, henv))
            case Efq(p):
                return ("efq", go(p, ienv, penv, henv))
            case Markov(t):
                return ("mp", go(t, ienv, penv, henv))
            case Truth():
                return ("tt",)
            case Rec(b, s, m):
                return ("rec", go(b, ienv, penv, henv), go(s, ienv, penv, henv),
                        go(m, ienv, penv, henv))
            case Post(r, args):
                return ("post", r, tuple(go(a, ienv, penv, henv) for a in args))
        raise TypeError(f"unexpected node {x!r}")

    return go(x, ienv, penv, henv)
