"""Concrete-syntax output for terms, formulas and proof files.

Output re-parses to an alpha-equivalent AST.  Hypothesis axioms print in the
short form `hyp[a]` / `wit[a]` when the ambient binder or context determines
their annotation, and in the explicit form `hyp[a : all x. P]` otherwise.
"""

from __future__ import annotations

from .syntax import (
    And, App, Atom, Bottom, Case, Const, Context, Efq, Em0, Em1, ExElim,
    ExIntro, Exists, FnApp, Forall, Formula, Hyp, HYP_UNIV, HYP_WIT, Hypz,
    IApp, ILam, Imp, IndTerm, Inj, Lam, Markov, Not, Or, Pair, Post, Proj,
    ProofTerm, ProofVar, Rec, Signature, Succ, Truth, Var, Wit, Zero,
    alpha_eq, as_negation, numeral_value,
)

# ---------------------------------------------------------------------------
# individual terms

def format_ind(t: IndTerm) -> str:
    n = numeral_value(t)
    if n is not None:
        return str(n)
    match t:
        case Var(name) | Const(name):
            return name
        case Zero():
            return "0"
        case Succ(arg):
            return f"S {format_ind(arg)}"
        case FnApp(fn, args):
            return f"{fn}({', '.join(format_ind(a) for a in args)})"
    raise TypeError(f"unexpected individual term: {t!r}")


# ---------------------------------------------------------------------------
# formulas; precedence: imp/quantifier 0, or 1, and 2, not 3, atom 4

def format_formula(a: Formula, prec: int = 0) -> str:
    neg = as_negation(a)
    if neg is not None:
        s = "~" + format_formula(neg, 3)
        return f"({s})" if prec > 3 else s
    match a:
        case Atom(p, args):
            return p if not args else f"{p}({', '.join(format_ind(x) for x in args)})"
        case Bottom():
            return "bot"
        case Imp(l, r):
            s = f"{format_formula(l, 1)} -> {format_formula(r, 0)}"
            return f"({s})" if prec > 0 else s
        case Or(l, r):
            s = f"{format_formula(l, 1)} | {format_formula(r, 2)}"
            return f"({s})" if prec > 1 else s
        case And(l, r):
            s = f"{format_formula(l, 2)} & {format_formula(r, 3)}"
            return f"({s})" if prec > 2 else s
        case Forall(v, b):
            s = f"all {v}. {format_formula(b, 0)}"
            return f"({s})" if prec > 0 else s
        case Exists(v, b):
            s = f"ex {v}. {format_formula(b, 0)}"
            return f"({s})" if prec > 0 else s
    raise TypeError(f"unexpected formula: {a!r}")


# ---------------------------------------------------------------------------
# proof terms; precedence: statement 0, application 1, unary 2, atom 3

# hvar -> (kind, acceptable full formulas for the short form)
_HypEnv = dict[str, tuple[str, tuple[Formula, ...]]]


def em1_wit_matrix(sig: Signature | None, matrix: Formula) -> Formula:
    """Matrix of the witness-side hypothesis of an exception node: the
    registered complement for atoms that have one, the negation otherwise.
    The parser resolves the short form `wit[a]` with the same rule."""
    if sig is not None and isinstance(matrix, Atom):
        comp = sig.complement_of(matrix.pred)
        if comp is not None:
            return Atom(comp, matrix.args)
    return Not(matrix)


def _env_from_context(ctx: Context | None) -> _HypEnv:
    env: _HypEnv = {}
    if ctx is None:
        return env
    for e in ctx.visible():
        if e.kind == HYP_UNIV and isinstance(e.formula, Forall):
            env[e.name] = ("hyp", (e.formula,))
        elif e.kind == HYP_WIT and isinstance(e.formula, Exists):
            env[e.name] = ("wit", (e.formula,))
    return env


def format_proof(t: ProofTerm, ctx: Context | None = None,
                 sig: Signature | None = None) -> str:
    return _fmt(t, _env_from_context(ctx), sig, 0)


def _fmt(t: ProofTerm, env: _HypEnv, sig: Signature | None, prec: int) -> str:
    def paren(s: str, level: int) -> str:
        return f"({s})" if prec > level else s

    def sub(t: ProofTerm, p: int, env2: _HypEnv | None = None) -> str:
        return _fmt(t, env if env2 is None else env2, sig, p)

    match t:
        case ProofVar(name):
            return name
        case Truth():
            return "tt"
        case Hyp(h, iv, mat):
            exp = env.get(h)
            full = Forall(iv, mat)
            if exp is not None and exp[0] == "hyp" and any(
                    alpha_eq(full, f) for f in exp[1]):
                return f"hyp[{h}]"
            return f"hyp[{h} : {format_formula(full)}]"
        case Wit(h, iv, mat):
            exp = env.get(h)
            full = Exists(iv, mat)
            if exp is not None and exp[0] == "wit" and any(
                    alpha_eq(full, f) for f in exp[1]):
                return f"wit[{h}]"
            return f"wit[{h} : {format_formula(full)}]"
        case Hypz(p):
            return f"hypo[{format_formula(p)}]"
        case Efq(p):
            return f"efq[{format_formula(p)}]"
        case Markov(tgt):
            return f"mp[{format_formula(tgt)}]"
        case Pair(l, r):
            return f"<{sub(l, 0)}, {sub(r, 0)}>"
        case Proj(i, b):
            op = "fst" if i == 0 else "snd"
            return paren(f"{op} {sub(b, 2)}", 2)
        case Inj(i, other, b):
            op = "inl" if i == 0 else "inr"
            return paren(f"{op}[{format_formula(other)}] {sub(b, 2)}", 2)
        case App(fn, arg):
            return paren(f"{sub(fn, 1)} {sub(arg, 2)}", 1)
        case IApp(fn, arg):
            return paren(f"{sub(fn, 1)} @ {format_ind(arg)}", 1)
        case Lam(v, annot, body):
            return paren(f"fun ({v} : {format_formula(annot)}) => {sub(body, 0)}", 0)
        case ILam(v, body):
            return paren(f"fun {{{v}}} => {sub(body, 0)}", 0)
        case ExIntro(w, b, annot):
            return f"(({format_ind(w)}, {sub(b, 0)}) : {format_formula(annot, 4)})"
        case ExElim(s, iv, pv, b):
            return paren(f"dest {sub(s, 1)} as ({iv}, {pv}) => {sub(b, 0)}", 0)
        case Case(s, lv, lb, rv, rb):
            return (f"case {sub(s, 1)} of {{ {lv} => {sub(lb, 0)}"
                    f" | {rv} => {sub(rb, 0)} }}")
        case Em0(p, h, l, r):
            env2 = dict(env)
            env2.pop(h, None)
            return (f"em0[{format_formula(p)}]{{ {h}. {sub(l, 0, env2)}"
                    f" | {h}. {sub(r, 0, env2)} }}")
        case Em1(h, iv, mat, l, r):
            lenv = {**env, h: ("hyp", (Forall(iv, mat),))}
            renv = {**env, h: ("wit", (Exists(iv, em1_wit_matrix(sig, mat)),))}
            return (f"em1[{format_formula(Forall(iv, mat))}]{{ {h}. {sub(l, 0, lenv)}"
                    f" | {h}. {sub(r, 0, renv)} }}")
        case Rec(b, s, m):
            return f"rec({sub(b, 0)}, {sub(s, 0)}, {format_ind(m)})"
        case Post(rule, args):
            return f"post[{rule}]({', '.join(sub(a, 0) for a in args)})"
    raise TypeError(f"unexpected proof term: {t!r}")
