"""Primitive recursive functions and relations for the arithmetic system.

Functions are built from the usual combinators; a relation holds of its
arguments when its defining function evaluates to 0 (direct polarity) or to
anything else (complement polarity).  Recursion is on the first argument:
f(0, xs) = base(xs) and f(k+1, xs) = step(k, f(k, xs), xs).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .syntax import Atom, Formula, IndTerm, Signature, free_ind_vars, numeral_value


class ArithError(Exception):
    pass


# ---------------------------------------------------------------------------
# function combinators

@dataclass(frozen=True)
class PrZero:
    pass


@dataclass(frozen=True)
class PrSucc:
    pass


@dataclass(frozen=True)
class PrProj:
    index: int  # 1-based
    arity: int


@dataclass(frozen=True)
class PrComp:
    outer: "PRFun"
    inner: tuple["PRFun", ...]


@dataclass(frozen=True)
class PrRec:
    base: "PRFun"
    step: "PRFun"


PRFun = Union[PrZero, PrSucc, PrProj, PrComp, PrRec]


@dataclass(frozen=True)
class PRRel:
    name: str
    fn: PRFun
    polarity: str  # "direct" (holds iff 0) or "complement" (holds iff nonzero)
    complement: str  # name of the paired symbol


def arity(f: PRFun) -> int:
    match f:
        case PrZero():
            return 0
        case PrSucc():
            return 1
        case PrProj(_, n):
            return n
        case PrComp(_, inner):
            return arity(inner[0])
        case PrRec(base, _):
            return arity(base) + 1
    raise TypeError(f"unexpected combinator: {f!r}")


def validate_pr(f: PRFun) -> None:
    """Check arity consistency; raises ArithError on a bad composition."""
    match f:
        case PrZero() | PrSucc():
            return
        case PrProj(i, n):
            if not (n >= 1 and 1 <= i <= n):
                raise ArithError(f"bad projection proj({i},{n})")
        case PrComp(outer, inner):
            if not inner:
                raise ArithError("composition needs at least one inner function")
            for g in inner:
                validate_pr(g)
            validate_pr(outer)
            if arity(outer) != len(inner):
                raise ArithError(
                    f"composition arity mismatch: outer wants {arity(outer)}, got {len(inner)}")
            n = arity(inner[0])
            if any(arity(g) != n for g in inner):
                raise ArithError("inner functions of a composition must share an arity")
        case PrRec(base, step):
            validate_pr(base)
            validate_pr(step)
            if arity(step) != arity(base) + 2:
                raise ArithError(
                    f"recursion arity mismatch: base {arity(base)}, step {arity(step)}")


def eval_pr(f: PRFun, args: tuple[int, ...] | list[int]) -> int:
    """Evaluate a primitive recursive function on numerals; total."""
    args = tuple(args)
    if len(args) != arity(f):
        raise ArithError(f"arity mismatch: expected {arity(f)} args, got {len(args)}")
    match f:
        case PrZero():
            return 0
        case PrSucc():
            return args[0] + 1
        case PrProj(i, _):
            return args[i - 1]
        case PrComp(outer, inner):
            return eval_pr(outer, tuple(eval_pr(g, args) for g in inner))
        case PrRec(base, step):
            n, rest = args[0], args[1:]
            acc = eval_pr(base, rest)
            for k in range(n):
                acc = eval_pr(step, (k, acc) + rest)
            return acc
    raise TypeError(f"unexpected combinator: {f!r}")


# ---------------------------------------------------------------------------
# prelude

def _prelude_funs() -> dict[str, PRFun]:
    add = PrRec(PrProj(1, 1), PrComp(PrSucc(), (PrProj(2, 3),)))
    zero1 = PrRec(PrZero(), PrProj(2, 2))
    mul = PrRec(zero1, PrComp(add, (PrProj(2, 3), PrProj(3, 3))))
    pred = PrRec(PrZero(), PrProj(1, 2))
    rsub = PrRec(PrProj(1, 1), PrComp(pred, (PrProj(2, 3),)))
    sub = PrComp(rsub, (PrProj(2, 2), PrProj(1, 2)))
    absdiff = PrComp(add, (sub, PrComp(sub, (PrProj(2, 2), PrProj(1, 2)))))
    one = PrComp(PrSucc(), (PrZero(),))
    return {
        "add": add, "mul": mul, "pred": pred, "sub": sub,
        "absdiff": absdiff, "zero1": zero1, "one": one,
    }


def _prelude_rels(funs: dict[str, PRFun]) -> dict[str, PRRel]:
    rels: dict[str, PRRel] = {}
    for name, fn, comp in [
        ("Eq", funs["absdiff"], "Neq"),
        ("Le", funs["sub"], "Gt"),
        ("False0", funs["one"], "True0"),
    ]:
        rels[name] = PRRel(name, fn, "direct", comp)
        rels[comp] = PRRel(comp, fn, "complement", name)
    return rels


def prelude_signature() -> Signature:
    """Signature preloaded with the arithmetic prelude: add, mul, pred, sub,
    absdiff plus the relations Eq/Neq, Le/Gt, False0/True0."""
    funs = _prelude_funs()
    rels = _prelude_rels(funs)
    predicates = {name: arity(rel.fn) for name, rel in rels.items()}
    complements = {name: rel.complement for name, rel in rels.items()}
    return Signature(
        constants=frozenset(),
        functions={},
        predicates=predicates,
        complements=complements,
        prfuns=funs,
        prrels=rels,
    )


def format_pr(f: PRFun, named: dict[PRFun, str] | None = None) -> str:
    """Combinator-grammar text for a function, preferring declared names."""
    if named and f in named:
        return named[f]
    match f:
        case PrZero():
            return "zero"
        case PrSucc():
            return "succ"
        case PrProj(i, n):
            return f"proj({i},{n})"
        case PrComp(outer, inner):
            parts = ", ".join(format_pr(g, named) for g in inner)
            return f"comp({format_pr(outer, named)}; {parts})"
        case PrRec(base, step):
            return f"rec({format_pr(base, named)}; {format_pr(step, named)})"
    raise TypeError(f"unexpected combinator: {f!r}")


# ---------------------------------------------------------------------------
# atom evaluation

def eval_atomic(sig: Signature, atom: Formula) -> bool:
    """Truth value of a closed atom over registered relations."""
    if not isinstance(atom, Atom):
        raise ArithError(f"not an atom: {atom!r}")
    rel = sig.prrels.get(atom.pred)
    if rel is None:
        raise ArithError(f"predicate {atom.pred!r} has no registered relation")
    if free_ind_vars(atom):
        raise ArithError(f"atom is not closed: {atom!r}")
    nums = []
    for a in atom.args:
        v = numeral_value(a)
        if v is None:
            raise ArithError(f"argument is not a numeral: {a!r}")
        nums.append(v)
    value = eval_pr(rel.fn, tuple(nums))
    return value == 0 if rel.polarity == "direct" else value != 0


def complement_atom(sig: Signature, atom: Atom) -> Atom:
    comp = sig.complement_of(atom.pred)
    if comp is None:
        raise ArithError(f"predicate {atom.pred!r} has no complement symbol")
    return Atom(comp, atom.args)


# ---------------------------------------------------------------------------
# Post rules

POST_RULES = ("refl", "symm", "trans", "succ", "succ_inj", "succ_zero", "clash")


class PostError(Exception):
    pass


def _eq(name: str, a: Formula) -> tuple[IndTerm, IndTerm]:
    if not (isinstance(a, Atom) and a.pred == "Eq" and len(a.args) == 2):
        raise PostError(f"{name}: formula is not an equality: {a!r}")
    return a.args[0], a.args[1]


def post_check(sig: Signature, rule: str, premises: list[Formula], conclusion: Formula) -> None:
    """Accept exactly the instances of the fixed atomic rule list; raises
    PostError otherwise.  All formulas must be atomic."""
    for a in list(premises) + [conclusion]:
        if not isinstance(a, Atom):
            raise PostError(f"{rule}: non-atomic formula {a!r}")
        if a.pred not in sig.predicates:
            raise PostError(f"{rule}: unknown predicate {a.pred!r}")

    def want(n: int) -> None:
        if len(premises) != n:
            raise PostError(f"{rule}: expected {n} premises, got {len(premises)}")

    from .syntax import Succ, Zero  # local to avoid a wide import surface

    match rule:
        case "refl":
            want(0)
            m, n = _eq(rule, conclusion)
            if m != n:
                raise PostError("refl: sides differ")
        case "symm":
            want(1)
            m, n = _eq(rule, conclusion)
            pm, pn = _eq(rule, premises[0])
            if (pm, pn) != (n, m):
                raise PostError("symm: premise does not mirror the conclusion")
        case "trans":
            want(2)
            m, k = _eq(rule, conclusion)
            am, an = _eq(rule, premises[0])
            bm, bk = _eq(rule, premises[1])
            if not (am == m and bk == k and an == bm):
                raise PostError("trans: premises do not chain to the conclusion")
        case "succ":
            want(1)
            m, n = _eq(rule, conclusion)
            if not (isinstance(m, Succ) and isinstance(n, Succ)):
                raise PostError("succ: conclusion sides are not successors")
            pm, pn = _eq(rule, premises[0])
            if (pm, pn) != (m.arg, n.arg):
                raise PostError("succ: premise does not match the stripped conclusion")
        case "succ_inj":
            want(1)
            m, n = _eq(rule, conclusion)
            pm, pn = _eq(rule, premises[0])
            if not (isinstance(pm, Succ) and isinstance(pn, Succ)
                    and pm.arg == m and pn.arg == n):
                raise PostError("succ_inj: premise is not the successor form of the conclusion")
        case "succ_zero":
            want(1)
            pm, pn = _eq(rule, premises[0])
            if not (isinstance(pm, Succ) and isinstance(pn, Zero)):
                raise PostError("succ_zero: premise is not of the form Eq(S m, 0)")
        case "clash":
            want(2)
            a, b = premises
            comp = sig.complement_of(a.pred)
            if comp is None or b.pred != comp:
                raise PostError("clash: premises are not complementary")
            if a.args != b.args:
                raise PostError("clash: premise arguments differ")
        case _:
            raise PostError(f"unknown rule {rule!r}")
