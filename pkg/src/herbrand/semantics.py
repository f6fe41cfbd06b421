"""Classical evaluation of formulas in finite first-order models."""

from __future__ import annotations

from dataclasses import dataclass, field

from .syntax import (
    And, Atom, Bottom, Const, Exists, FnApp, Forall, Formula, Imp, IndTerm,
    Or, Signature, Succ, Var, Zero, free_ind_vars, is_arrow_free,
    is_propositional,
)


class ModelError(Exception):
    pass


@dataclass(frozen=True)
class Model:
    """A finite model: named domain elements, total interpretations."""

    domain: tuple[str, ...]
    consts: dict[str, str] = field(default_factory=dict)
    funcs: dict[str, dict[tuple[str, ...], str]] = field(default_factory=dict)
    preds: dict[str, set[tuple[str, ...]]] = field(default_factory=dict)


def eval_ind(model: Model, env: dict[str, str], t: IndTerm) -> str:
    match t:
        case Var(name):
            if name not in env:
                raise ModelError(f"unbound variable {name!r}")
            return env[name]
        case Const(name):
            if name not in model.consts:
                raise ModelError(f"uninterpreted constant {name!r}")
            return model.consts[name]
        case FnApp(fn, args):
            table = model.funcs.get(fn)
            if table is None:
                raise ModelError(f"uninterpreted function {fn!r}")
            key = tuple(eval_ind(model, env, a) for a in args)
            if key not in table:
                raise ModelError(f"function {fn!r} undefined on {key}")
            return table[key]
        case Zero() | Succ():
            raise ModelError("numerals have no finite-model interpretation")
    raise TypeError(f"unexpected individual term: {t!r}")


def eval_formula(model: Model, env: dict[str, str], a: Formula) -> bool:
    """Classical truth value; quantifiers range over the finite domain."""
    match a:
        case Atom(p, args):
            if p not in model.preds:
                raise ModelError(f"uninterpreted predicate {p!r}")
            key = tuple(eval_ind(model, env, x) for x in args)
            return key in model.preds[p]
        case Bottom():
            return False
        case And(l, r):
            return eval_formula(model, env, l) and eval_formula(model, env, r)
        case Or(l, r):
            return eval_formula(model, env, l) or eval_formula(model, env, r)
        case Imp(l, r):
            return (not eval_formula(model, env, l)) or eval_formula(model, env, r)
        case Forall(v, b):
            return all(eval_formula(model, {**env, v: d}, b) for d in model.domain)
        case Exists(v, b):
            return any(eval_formula(model, {**env, v: d}, b) for d in model.domain)
    raise TypeError(f"unexpected formula: {a!r}")


def _constants_of(t: IndTerm | Formula) -> frozenset[str]:
    match t:
        case Const(name):
            return frozenset({name})
        case FnApp(_, args) | Atom(_, args):
            out: frozenset[str] = frozenset()
            for a in args:
                out |= _constants_of(a)
            return out
        case And(l, r) | Or(l, r) | Imp(l, r):
            return _constants_of(l) | _constants_of(r)
        case Forall(_, b) | Exists(_, b):
            return _constants_of(b)
    return frozenset()


def _predicates_of(a: Formula) -> frozenset[str]:
    match a:
        case Atom(p, _):
            return frozenset({p})
        case And(l, r) | Or(l, r) | Imp(l, r):
            return _predicates_of(l) | _predicates_of(r)
        case Forall(_, b) | Exists(_, b):
            return _predicates_of(b)
    return frozenset()


def empty_model(a: Formula) -> Model:
    """The model over the formula's constants (one default element if there
    are none) where every predicate is the empty relation."""
    consts = sorted(_constants_of(a))
    domain = tuple(consts) if consts else ("el",)
    return Model(domain=domain,
                 consts={c: c for c in consts},
                 funcs={},
                 preds={p: set() for p in _predicates_of(a)})


def empty_model_check(a: Formula) -> bool:
    """Evaluate an existential with arrow-free propositional matrix in the
    all-empty model; false for every such formula."""
    if not isinstance(a, Exists):
        raise ModelError("expected an existential formula")
    if not is_propositional(a.body):
        raise ModelError("matrix must be propositional")
    if not is_arrow_free(a.body):
        raise ModelError("matrix must not contain an implication")
    if free_ind_vars(a):
        raise ModelError("formula must be closed")
    return eval_formula(empty_model(a), {}, a)
