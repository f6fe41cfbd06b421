"""Syntax-directed proof checking for the three systems.

`System.IL_HMP` is plain intuitionistic logic plus the Markov constant;
`System.IL_EM1` adds the excluded-middle split and exception nodes with
their hypothesis axioms; `System.HA_EM1` is the arithmetic variant with
induction, Post rules and decidable atoms.

Annotations make checking syntax-directed: types are synthesized bottom-up
except for `tt` and `post[...]`, which only occur where the expected formula
is determined and are checked against it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import arith
from .printer import format_formula
from .syntax import (
    And, App, Atom, Bottom, Case, Const, Context, CtxEntry, Efq, Em0, Em1,
    ExElim, ExIntro, Exists, FnApp, Forall, Formula, HYP_PROP, HYP_UNIV,
    HYP_WIT, Hyp, Hypz, IApp, ILam, Imp, IndTerm, Inj, Lam, Markov, Not, Or,
    Pair, Post, Proj, ProofTerm, ProofVar, Rec, Signature, Succ, Truth,
    VAR_KIND, Var, Wit, Zero, alpha_eq, free_ind_vars, free_proof_vars,
    is_arrow_free, is_negative, is_propositional, is_simply_universal,
    subst_ind,
)


class System(enum.Enum):
    IL_HMP = "il-hmp"
    IL_EM1 = "il-em1"
    HA_EM1 = "ha-em1"

    @property
    def is_ha(self) -> bool:
        return self is System.HA_EM1


Path = tuple[str, ...]


@dataclass(frozen=True)
class CheckError(Exception):
    """A located proof-checking failure; `code` names the violated rule."""

    code: str
    path: Path
    message: str

    def __str__(self) -> str:
        loc = ".".join(self.path) if self.path else "<root>"
        return f"{self.code} at {loc}: {self.message}"


UNBOUND_VAR = "UnboundVar"
ARITY_MISMATCH = "ArityMismatch"
ANNOTATION_MISMATCH = "AnnotationMismatch"
EIGENVARIABLE_VIOLATION = "EigenvariableViolation"
DISCIPLINE_VIOLATION = "DisciplineViolation"
NOT_NEGATIVE = "NotNegative"
NOT_PROPOSITIONAL = "NotPropositional"
BAD_SYSTEM_CONSTRUCT = "BadSystemConstruct"
BAD_POST_INSTANCE = "BadPostInstance"
NOT_CLOSED_TERM = "NotClosedTerm"


# ---------------------------------------------------------------------------
# signature-level validation

def validate_ind(sig: Signature, t: IndTerm, ha: bool, path: Path,
                 bound: frozenset[str]) -> None:
    match t:
        case Var(name):
            return
        case Const(name):
            if ha:
                raise CheckError(BAD_SYSTEM_CONSTRUCT, path,
                                 "arithmetic terms are built from 0, S and variables only")
            if name not in sig.constants:
                raise CheckError(UNBOUND_VAR, path, f"undeclared constant {name!r}")
        case Zero() | Succ():
            if not ha:
                raise CheckError(BAD_SYSTEM_CONSTRUCT, path,
                                 "numerals belong to the arithmetic system")
            if isinstance(t, Succ):
                validate_ind(sig, t.arg, ha, path, bound)
        case FnApp(fn, args):
            if ha:
                raise CheckError(BAD_SYSTEM_CONSTRUCT, path,
                                 "arithmetic terms are built from 0, S and variables only")
            n = sig.functions.get(fn)
            if n is None:
                raise CheckError(UNBOUND_VAR, path, f"undeclared function {fn!r}")
            if n != len(args):
                raise CheckError(ARITY_MISMATCH, path,
                                 f"function {fn!r} expects {n} arguments, got {len(args)}")
            for a in args:
                validate_ind(sig, a, ha, path, bound)


def validate_formula(sig: Signature, f: Formula, ha: bool, path: Path,
                     bound: frozenset[str] = frozenset()) -> None:
    match f:
        case Atom(p, args):
            n = sig.predicates.get(p)
            if n is None:
                raise CheckError(UNBOUND_VAR, path, f"undeclared predicate {p!r}")
            if n != len(args):
                raise CheckError(ARITY_MISMATCH, path,
                                 f"predicate {p!r} expects {n} arguments, got {len(args)}")
            for a in args:
                validate_ind(sig, a, ha, path, bound)
        case Bottom():
            if ha:
                raise CheckError(BAD_SYSTEM_CONSTRUCT, path,
                                 "arithmetic has no primitive absurdity; use False0()")
        case And(l, r) | Or(l, r) | Imp(l, r):
            validate_formula(sig, l, ha, path, bound)
            validate_formula(sig, r, ha, path, bound)
        case Forall(v, b) | Exists(v, b):
            validate_formula(sig, b, ha, path, bound | {v})


def validate_signature(sig: Signature, system: System) -> None:
    """Well-formedness of the declared symbols for the given system."""
    names: list[str] = (list(sig.constants) + list(sig.functions)
                        + list(sig.predicates))
    if len(names) != len(set(names)):
        dupes = sorted({n for n in names if names.count(n) > 1})
        raise CheckError(BAD_SYSTEM_CONSTRUCT, (),
                         f"symbol names are not unique across kinds: {dupes}")
    if system.is_ha:
        if sig.constants or sig.functions:
            raise CheckError(BAD_SYSTEM_CONSTRUCT, (),
                             "the arithmetic language fixes its terms to 0 and S")
        for p in sig.predicates:
            if p not in sig.complements:
                raise CheckError(BAD_SYSTEM_CONSTRUCT, (),
                                 f"predicate {p!r} has no paired complement symbol")


def validate_context(sig: Signature, ctx: Context, system: System) -> None:
    seen: set[str] = set()
    for e in ctx.entries:
        if e.name in seen:
            raise CheckError(BAD_SYSTEM_CONSTRUCT, (),
                             f"context name {e.name!r} declared twice")
        seen.add(e.name)
        validate_formula(sig, e.formula, system.is_ha, ())
        if e.kind == HYP_UNIV and not isinstance(e.formula, Forall):
            raise CheckError(DISCIPLINE_VIOLATION, (),
                             f"universal hypothesis {e.name!r} must bind a universal formula")
        if e.kind == HYP_WIT and not isinstance(e.formula, Exists):
            raise CheckError(DISCIPLINE_VIOLATION, (),
                             f"witness hypothesis {e.name!r} must bind an existential formula")
        if e.kind == HYP_PROP and not is_propositional(e.formula):
            raise CheckError(NOT_PROPOSITIONAL, (),
                             f"propositional hypothesis {e.name!r} is not propositional")


# ---------------------------------------------------------------------------
# admissible constructors per system

_IL_COMMON = (ProofVar, App, IApp, Lam, ILam, Pair, Proj, Inj, Case, ExIntro,
              ExElim)
_ALLOWED = {
    System.IL_HMP: _IL_COMMON + (Efq, Markov),
    System.IL_EM1: _IL_COMMON + (Efq, Hypz, Hyp, Wit, Em0, Em1),
    System.HA_EM1: _IL_COMMON + (Hyp, Wit, Em1, Truth, Rec, Post),
}


# ---------------------------------------------------------------------------
# the checker

class Checker:
    def __init__(self, system: System, sig: Signature):
        self.system = system
        self.sig = sig
        self.ha = system.is_ha

    def fail(self, code: str, path: Path, message: str):
        raise CheckError(code, path, message)

    def wf(self, f: Formula, path: Path) -> None:
        validate_formula(self.sig, f, self.ha, path)

    def gate(self, t: ProofTerm, path: Path) -> None:
        if not isinstance(t, _ALLOWED[self.system]):
            self.fail(BAD_SYSTEM_CONSTRUCT, path,
                      f"{type(t).__name__} is not a construct of {self.system.value}")

    # -- synthesis ---------------------------------------------------------

    def infer(self, ctx: Context, t: ProofTerm, path: Path = ()) -> Formula:
        self.gate(t, path)
        match t:
            case ProofVar(name):
                e = ctx.lookup_proof(name)
                if e is None:
                    self.fail(UNBOUND_VAR, path, f"unbound proof variable {name!r}")
                return e.formula
            case Hyp(h, iv, mat):
                full = Forall(iv, mat)
                self.wf(full, path)
                if not is_simply_universal(full):
                    self.fail(NOT_NEGATIVE, path,
                              "universal hypothesis must have a negative matrix")
                e = ctx.lookup_hyp(h)
                if e is None:
                    self.fail(UNBOUND_VAR, path, f"unbound hypothesis variable {h!r}")
                if e.kind != HYP_UNIV:
                    self.fail(DISCIPLINE_VIOLATION, path,
                              f"hypothesis {h!r} is not a universal hypothesis")
                if not alpha_eq(e.formula, full):
                    self.fail(ANNOTATION_MISMATCH, path,
                              f"hypothesis {h!r} binds {format_formula(e.formula)}, "
                              f"annotation says {format_formula(full)}")
                return full
            case Wit(h, iv, mat):
                full = Exists(iv, mat)
                self.wf(full, path)
                if not is_negative(mat):
                    self.fail(NOT_NEGATIVE, path,
                              "witness hypothesis must have a negative matrix")
                e = ctx.lookup_hyp(h)
                if e is None:
                    self.fail(UNBOUND_VAR, path, f"unbound hypothesis variable {h!r}")
                if e.kind != HYP_WIT:
                    self.fail(DISCIPLINE_VIOLATION, path,
                              f"hypothesis {h!r} is not a witness hypothesis")
                if not alpha_eq(e.formula, full):
                    self.fail(ANNOTATION_MISMATCH, path,
                              f"hypothesis {h!r} binds {format_formula(e.formula)}, "
                              f"annotation says {format_formula(full)}")
                return full
            case Hypz(p):
                self.wf(p, path)
                if not is_propositional(p):
                    self.fail(NOT_PROPOSITIONAL, path,
                              "assumption formula must be propositional")
                if not is_negative(p):
                    self.fail(NOT_NEGATIVE, path,
                              "assumption formula must be negative")
                for e in ctx.visible():
                    if e.kind == HYP_PROP and alpha_eq(e.formula, p):
                        return p
                self.fail(UNBOUND_VAR, path,
                          f"no propositional hypothesis of {format_formula(p)} in scope")
            case Efq(p):
                self.wf(p, path)
                if not is_propositional(p):
                    self.fail(NOT_PROPOSITIONAL, path,
                              "ex falso conclusion must be propositional")
                return Imp(Bottom(), p)
            case Markov(target):
                self.wf(target, path)
                if not isinstance(target, Exists):
                    self.fail(ANNOTATION_MISMATCH, path,
                              "Markov annotation must be an existential formula")
                if not is_propositional(target.body):
                    self.fail(NOT_PROPOSITIONAL, path,
                              "Markov matrix must be propositional")
                if not is_arrow_free(target.body):
                    self.fail(ANNOTATION_MISMATCH, path,
                              "Markov matrix must not contain an implication")
                return Imp(Not(Not(target)), target)
            case App(fn, arg):
                fty = self.infer(ctx, fn, path + ("fn",))
                if not isinstance(fty, Imp):
                    self.fail(ANNOTATION_MISMATCH, path,
                              f"applied term proves {format_formula(fty)}, "
                              "not an implication")
                self.check(ctx, arg, fty.left, path + ("arg",))
                return fty.right
            case IApp(fn, arg):
                fty = self.infer(ctx, fn, path + ("fn",))
                if not isinstance(fty, Forall):
                    self.fail(ANNOTATION_MISMATCH, path,
                              f"instantiated term proves {format_formula(fty)}, "
                              "not a universal")
                validate_ind(self.sig, arg, self.ha, path, frozenset())
                return subst_ind(fty.body, arg, fty.var)
            case Lam(v, annot, body):
                self.wf(annot, path)
                bty = self.infer(ctx.push(VAR_KIND, v, annot), body, path + ("body",))
                return Imp(annot, bty)
            case ILam(v, body):
                self.eigen(ctx, v, path)
                bty = self.infer(ctx, body, path + ("body",))
                return Forall(v, bty)
            case Pair(l, r):
                return And(self.infer(ctx, l, path + ("left",)),
                           self.infer(ctx, r, path + ("right",)))
            case Proj(i, b):
                bty = self.infer(ctx, b, path + ("body",))
                if not isinstance(bty, And):
                    self.fail(ANNOTATION_MISMATCH, path,
                              f"projected term proves {format_formula(bty)}, "
                              "not a conjunction")
                return bty.left if i == 0 else bty.right
            case Inj(i, other, b):
                self.wf(other, path)
                bty = self.infer(ctx, b, path + ("body",))
                return Or(bty, other) if i == 0 else Or(other, bty)
            case Case(s, lv, lb, rv, rb):
                sty = self.infer(ctx, s, path + ("scrut",))
                if not isinstance(sty, Or):
                    self.fail(ANNOTATION_MISMATCH, path,
                              f"case scrutinee proves {format_formula(sty)}, "
                              "not a disjunction")
                lty = self.infer(ctx.push(VAR_KIND, lv, sty.left), lb, path + ("left",))
                rty = self.infer(ctx.push(VAR_KIND, rv, sty.right), rb, path + ("right",))
                if not alpha_eq(lty, rty):
                    self.fail(ANNOTATION_MISMATCH, path,
                              "case branches prove different formulas: "
                              f"{format_formula(lty)} vs {format_formula(rty)}")
                return lty
            case ExIntro(w, b, annot):
                self.wf(annot, path)
                if not isinstance(annot, Exists):
                    self.fail(ANNOTATION_MISMATCH, path,
                              "existential introduction must be annotated with "
                              "an existential formula")
                validate_ind(self.sig, w, self.ha, path, frozenset())
                self.check(ctx, b, subst_ind(annot.body, w, annot.var),
                           path + ("body",))
                return annot
            case ExElim(s, iv, pv, b):
                sty = self.infer(ctx, s, path + ("scrut",))
                if not isinstance(sty, Exists):
                    self.fail(ANNOTATION_MISMATCH, path,
                              f"destructed term proves {format_formula(sty)}, "
                              "not an existential")
                if iv != sty.var and iv in free_ind_vars(sty.body):
                    self.fail(EIGENVARIABLE_VIOLATION, path,
                              f"binder {iv!r} occurs free in the scrutinee matrix")
                self.eigen(ctx, iv, path)
                inst = subst_ind(sty.body, Var(iv), sty.var)
                cty = self.infer(ctx.push(VAR_KIND, pv, inst), b, path + ("body",))
                if iv in free_ind_vars(cty):
                    self.fail(EIGENVARIABLE_VIOLATION, path,
                              f"binder {iv!r} escapes into the conclusion "
                              f"{format_formula(cty)}")
                return cty
            case Em0(p, h, l, r):
                self.check_em0_annot(p, path)
                lty = self.infer(ctx.push(HYP_PROP, h, Not(p)), l, path + ("left",))
                rty = self.infer(ctx.push(HYP_PROP, h, p), r, path + ("right",))
                if not alpha_eq(lty, rty):
                    self.fail(ANNOTATION_MISMATCH, path,
                              "split branches prove different formulas: "
                              f"{format_formula(lty)} vs {format_formula(rty)}")
                return lty
            case Em1(h, iv, mat, l, r):
                wit_mat = self.check_em1_annot(t, path)
                lty = self.infer(ctx.push(HYP_UNIV, h, Forall(iv, mat)), l,
                                 path + ("left",))
                rty = self.infer(ctx.push(HYP_WIT, h, Exists(iv, wit_mat)), r,
                                 path + ("right",))
                if not alpha_eq(lty, rty):
                    self.fail(ANNOTATION_MISMATCH, path,
                              "exception branches prove different formulas: "
                              f"{format_formula(lty)} vs {format_formula(rty)}")
                self.check_em1_conclusion(lty, path)
                check_discipline(self.system, t, self.sig, path)
                return lty
            case Rec(b, s, m):
                sty = self.infer(ctx, s, path + ("step",))
                motive = self.rec_motive(sty, path)
                self.check(ctx, b, subst_ind(motive[1], Zero(), motive[0]),
                           path + ("base",))
                validate_ind(self.sig, m, self.ha, path, frozenset())
                return subst_ind(motive[1], m, motive[0])
            case Truth():
                self.fail(ANNOTATION_MISMATCH, path,
                          "tt only occurs where the expected atom is determined")
            case Post(rule, args):
                return self.infer_post(ctx, rule, args, path)
        raise TypeError(f"unexpected proof term: {t!r}")

    def infer_post(self, ctx: Context, rule: str, args: tuple[ProofTerm, ...],
                   path: Path) -> Formula:
        """Synthesis for the post rules whose conclusion is determined by
        their premises; the others are checking-mode only."""
        if not self.ha:
            self.fail(BAD_SYSTEM_CONSTRUCT, path,
                      f"post rules are not constructs of {self.system.value}")

        def sides(f: Formula, what: str) -> tuple[IndTerm, IndTerm]:
            if not (isinstance(f, Atom) and f.pred == "Eq" and len(f.args) == 2):
                self.fail(BAD_POST_INSTANCE, path, f"{what} is not an equality")
            return f.args[0], f.args[1]

        def premise(i: int) -> Formula:
            return self.infer(ctx, args[i], path + (f"arg{i}",))

        def want(n: int) -> None:
            if len(args) != n:
                self.fail(BAD_POST_INSTANCE, path,
                          f"{rule} expects {n} premises, got {len(args)}")

        premises: list[Formula]
        match rule:
            case "symm":
                want(1)
                premises = [premise(0)]
                n, m = sides(premises[0], "premise")
                conclusion = Atom("Eq", (m, n))
            case "trans":
                want(2)
                premises = [premise(0), premise(1)]
                m, n = sides(premises[0], "first premise")
                n2, k = sides(premises[1], "second premise")
                if n != n2:
                    self.fail(BAD_POST_INSTANCE, path,
                              "trans premises do not share a middle term")
                conclusion = Atom("Eq", (m, k))
            case "succ":
                want(1)
                premises = [premise(0)]
                m, n = sides(premises[0], "premise")
                conclusion = Atom("Eq", (Succ(m), Succ(n)))
            case "succ_inj":
                want(1)
                premises = [premise(0)]
                m, n = sides(premises[0], "premise")
                if not (isinstance(m, Succ) and isinstance(n, Succ)):
                    self.fail(BAD_POST_INSTANCE, path,
                              "succ_inj premise is not an equality of successors")
                conclusion = Atom("Eq", (m.arg, n.arg))
            case "refl" | "succ_zero" | "clash":
                self.fail(ANNOTATION_MISMATCH, path,
                          f"post[{rule}] only occurs where the expected atom "
                          "is determined")
                raise AssertionError  # unreachable
            case _:
                self.fail(BAD_POST_INSTANCE, path, f"unknown post rule {rule!r}")
                raise AssertionError  # unreachable
        try:
            arith.post_check(self.sig, rule, premises, conclusion)
        except arith.PostError as e:
            self.fail(BAD_POST_INSTANCE, path, str(e))
        return conclusion

    # -- checking against an expected formula --------------------------------

    def check(self, ctx: Context, t: ProofTerm, expected: Formula,
              path: Path = ()) -> None:
        self.gate(t, path)
        match t:
            case Truth():
                self.check_true_atom(expected, path)
                return
            case Post(rule, args):
                self.check_post(ctx, rule, args, expected, path)
                return
            case Pair(l, r) if isinstance(expected, And):
                self.check(ctx, l, expected.left, path + ("left",))
                self.check(ctx, r, expected.right, path + ("right",))
                return
            case Inj(i, other, b) if isinstance(expected, Or):
                self.wf(other, path)
                mine, declared = ((expected.left, expected.right) if i == 0
                                  else (expected.right, expected.left))
                if not alpha_eq(other, declared):
                    self.fail(ANNOTATION_MISMATCH, path,
                              f"injection annotation {format_formula(other)} "
                              f"does not match {format_formula(declared)}")
                self.check(ctx, b, mine, path + ("body",))
                return
            case Lam(v, annot, body) if isinstance(expected, Imp):
                self.wf(annot, path)
                if not alpha_eq(annot, expected.left):
                    self.fail(ANNOTATION_MISMATCH, path,
                              f"binder annotation {format_formula(annot)} does "
                              f"not match {format_formula(expected.left)}")
                self.check(ctx.push(VAR_KIND, v, annot), body, expected.right,
                           path + ("body",))
                return
            case ILam(v, body) if isinstance(expected, Forall):
                if v != expected.var and v in free_ind_vars(expected.body):
                    self.fail(EIGENVARIABLE_VIOLATION, path,
                              f"binder {v!r} occurs free in the expected matrix")
                self.eigen(ctx, v, path)
                self.check(ctx, body, subst_ind(expected.body, Var(v), expected.var),
                           path + ("body",))
                return
            case Case(s, lv, lb, rv, rb):
                sty = self.infer(ctx, s, path + ("scrut",))
                if not isinstance(sty, Or):
                    self.fail(ANNOTATION_MISMATCH, path,
                              f"case scrutinee proves {format_formula(sty)}, "
                              "not a disjunction")
                self.check(ctx.push(VAR_KIND, lv, sty.left), lb, expected,
                           path + ("left",))
                self.check(ctx.push(VAR_KIND, rv, sty.right), rb, expected,
                           path + ("right",))
                return
            case ExElim(s, iv, pv, b):
                sty = self.infer(ctx, s, path + ("scrut",))
                if not isinstance(sty, Exists):
                    self.fail(ANNOTATION_MISMATCH, path,
                              f"destructed term proves {format_formula(sty)}, "
                              "not an existential")
                if iv != sty.var and iv in free_ind_vars(sty.body):
                    self.fail(EIGENVARIABLE_VIOLATION, path,
                              f"binder {iv!r} occurs free in the scrutinee matrix")
                self.eigen(ctx, iv, path)
                if iv in free_ind_vars(expected):
                    self.fail(EIGENVARIABLE_VIOLATION, path,
                              f"binder {iv!r} occurs free in the expected formula")
                inst = subst_ind(sty.body, Var(iv), sty.var)
                self.check(ctx.push(VAR_KIND, pv, inst), b, expected,
                           path + ("body",))
                return
            case Em0(p, h, l, r):
                self.check_em0_annot(p, path)
                self.check(ctx.push(HYP_PROP, h, Not(p)), l, expected,
                           path + ("left",))
                self.check(ctx.push(HYP_PROP, h, p), r, expected,
                           path + ("right",))
                return
            case Em1(h, iv, mat, l, r):
                wit_mat = self.check_em1_annot(t, path)
                self.check_em1_conclusion(expected, path)
                self.check(ctx.push(HYP_UNIV, h, Forall(iv, mat)), l, expected,
                           path + ("left",))
                self.check(ctx.push(HYP_WIT, h, Exists(iv, wit_mat)), r, expected,
                           path + ("right",))
                check_discipline(self.system, t, self.sig, path)
                return
        got = self.infer(ctx, t, path)
        if not alpha_eq(got, expected):
            self.fail(ANNOTATION_MISMATCH, path,
                      f"term proves {format_formula(got)}, "
                      f"expected {format_formula(expected)}")

    # -- side conditions ------------------------------------------------------

    def eigen(self, ctx: Context, v: str, path: Path) -> None:
        for e in ctx.visible():
            if v in free_ind_vars(e.formula):
                self.fail(EIGENVARIABLE_VIOLATION, path,
                          f"eigenvariable {v!r} occurs free in the hypothesis "
                          f"{e.name} : {format_formula(e.formula)}")

    def check_em0_annot(self, p: Formula, path: Path) -> None:
        if self.system is not System.IL_EM1:
            self.fail(BAD_SYSTEM_CONSTRUCT, path,
                      f"the propositional split is not part of {self.system.value}")
        self.wf(p, path)
        if not is_propositional(p):
            self.fail(NOT_PROPOSITIONAL, path, "split formula must be propositional")
        if not is_negative(p):
            self.fail(NOT_NEGATIVE, path, "split formula must be negative")

    def check_em1_annot(self, t: Em1, path: Path) -> Formula:
        """Validate the matrix; returns the witness-side matrix."""
        self.wf(Forall(t.ivar, t.matrix), path)
        if self.ha:
            if not isinstance(t.matrix, Atom):
                self.fail(ANNOTATION_MISMATCH, path,
                          "exception matrix must be atomic in arithmetic")
            return arith.complement_atom(self.sig, t.matrix)
        if not is_propositional(t.matrix):
            self.fail(NOT_PROPOSITIONAL, path, "exception matrix must be propositional")
        if not is_negative(t.matrix):
            self.fail(NOT_NEGATIVE, path, "exception matrix must be negative")
        return Not(t.matrix)

    def check_em1_conclusion(self, c: Formula, path: Path) -> None:
        if not isinstance(c, Exists):
            self.fail(ANNOTATION_MISMATCH, path,
                      f"exception node must conclude an existential, "
                      f"got {format_formula(c)}")
        if not is_propositional(c.body):
            self.fail(NOT_PROPOSITIONAL, path,
                      "exception conclusion matrix must be propositional")
        if not is_negative(c.body):
            self.fail(NOT_NEGATIVE, path,
                      "exception conclusion matrix must be negative")

    def check_true_atom(self, expected: Formula, path: Path) -> None:
        if not self.ha:
            self.fail(BAD_SYSTEM_CONSTRUCT, path,
                      f"tt is not a construct of {self.system.value}")
        if not isinstance(expected, Atom):
            self.fail(ANNOTATION_MISMATCH, path,
                      f"tt proves closed true atoms, expected {format_formula(expected)}")
        if free_ind_vars(expected):
            self.fail(NOT_CLOSED_TERM, path,
                      f"tt needs a closed atom, got {format_formula(expected)}")
        try:
            value = arith.eval_atomic(self.sig, expected)
        except arith.ArithError as e:
            self.fail(BAD_POST_INSTANCE, path, str(e))
        if not value:
            self.fail(BAD_POST_INSTANCE, path,
                      f"atom {format_formula(expected)} evaluates to false")

    def check_post(self, ctx: Context, rule: str, args: tuple[ProofTerm, ...],
                   expected: Formula, path: Path) -> None:
        if not self.ha:
            self.fail(BAD_SYSTEM_CONSTRUCT, path,
                      f"post rules are not constructs of {self.system.value}")
        if not isinstance(expected, Atom):
            self.fail(BAD_POST_INSTANCE, path,
                      f"post conclusions are atomic, expected {format_formula(expected)}")

        def arg_path(i: int) -> Path:
            return path + (f"arg{i}",)

        def eq_atom(m: IndTerm, n: IndTerm) -> Formula:
            return Atom("Eq", (m, n))

        def want(n: int) -> None:
            if len(args) != n:
                self.fail(BAD_POST_INSTANCE, path,
                          f"{rule} expects {n} premises, got {len(args)}")

        def sides(f: Formula, what: str) -> tuple[IndTerm, IndTerm]:
            if not (isinstance(f, Atom) and f.pred == "Eq" and len(f.args) == 2):
                self.fail(BAD_POST_INSTANCE, path, f"{what} is not an equality")
            return f.args[0], f.args[1]

        premises: list[Formula]
        match rule:
            case "refl":
                want(0)
                premises = []
            case "symm":
                want(1)
                m, n = sides(expected, "conclusion")
                premises = [eq_atom(n, m)]
                self.check(ctx, args[0], premises[0], arg_path(0))
            case "trans":
                want(2)
                m, k = sides(expected, "conclusion")
                first = self.try_infer(ctx, args[0], arg_path(0))
                if first is not None:
                    _, mid = sides(first, "first premise")
                    premises = [first, eq_atom(mid, k)]
                    self.check(ctx, args[1], premises[1], arg_path(1))
                else:
                    second = self.try_infer(ctx, args[1], arg_path(1))
                    if second is None:
                        self.fail(BAD_POST_INSTANCE, path,
                                  "cannot determine the middle term of trans; "
                                  "at least one premise must synthesize")
                    mid, _ = sides(second, "second premise")
                    premises = [eq_atom(m, mid), second]
                    self.check(ctx, args[0], premises[0], arg_path(0))
            case "succ":
                want(1)
                m, n = sides(expected, "conclusion")
                if not (isinstance(m, Succ) and isinstance(n, Succ)):
                    self.fail(BAD_POST_INSTANCE, path,
                              "succ concludes an equality of successors")
                premises = [eq_atom(m.arg, n.arg)]
                self.check(ctx, args[0], premises[0], arg_path(0))
            case "succ_inj":
                want(1)
                m, n = sides(expected, "conclusion")
                premises = [eq_atom(Succ(m), Succ(n))]
                self.check(ctx, args[0], premises[0], arg_path(0))
            case "succ_zero":
                want(1)
                first = self.try_infer(ctx, args[0], arg_path(0))
                if first is None:
                    self.fail(BAD_POST_INSTANCE, path,
                              "the premise of succ_zero must synthesize")
                premises = [first]
            case "clash":
                want(2)
                first = self.try_infer(ctx, args[0], arg_path(0))
                if first is not None:
                    if not isinstance(first, Atom):
                        self.fail(BAD_POST_INSTANCE, path, "clash premises are atomic")
                    comp = self.sig.complement_of(first.pred)
                    if comp is None:
                        self.fail(BAD_POST_INSTANCE, path,
                                  f"predicate {first.pred!r} has no complement")
                    premises = [first, Atom(comp, first.args)]
                    self.check(ctx, args[1], premises[1], arg_path(1))
                else:
                    second = self.try_infer(ctx, args[1], arg_path(1))
                    if second is None or not isinstance(second, Atom):
                        self.fail(BAD_POST_INSTANCE, path,
                                  "at least one clash premise must synthesize")
                    comp = self.sig.complement_of(second.pred)
                    if comp is None:
                        self.fail(BAD_POST_INSTANCE, path,
                                  f"predicate {second.pred!r} has no complement")
                    premises = [Atom(comp, second.args), second]
                    self.check(ctx, args[0], premises[0], arg_path(0))
            case _:
                self.fail(BAD_POST_INSTANCE, path, f"unknown post rule {rule!r}")
        try:
            arith.post_check(self.sig, rule, premises, expected)
        except arith.PostError as e:
            self.fail(BAD_POST_INSTANCE, path, str(e))

    def try_infer(self, ctx: Context, t: ProofTerm, path: Path) -> Formula | None:
        if isinstance(t, (Truth, Post)):
            return None
        return self.infer(ctx, t, path)

    def rec_motive(self, sty: Formula, path: Path) -> tuple[str, Formula]:
        match sty:
            case Forall(v, Imp(pre, post)):
                if not alpha_eq(post, subst_ind(pre, Succ(Var(v)), v)):
                    self.fail(ANNOTATION_MISMATCH, path,
                              "induction step must prove all a. A(a) -> A(S a)")
                return v, pre
        self.fail(ANNOTATION_MISMATCH, path,
                  f"induction step proves {format_formula(sty)}, "
                  "expected all a. A(a) -> A(S a)")
        raise AssertionError  # unreachable


# ---------------------------------------------------------------------------
# public entry points

def check(system: System, sig: Signature, ctx: Context, t: ProofTerm,
          goal: Formula) -> None:
    """Check `ctx |- t : goal` in the given system; raises CheckError."""
    validate_signature(sig, system)
    validate_context(sig, ctx, system)
    validate_formula(sig, goal, system.is_ha, ())
    Checker(system, sig).check(ctx, t, goal)


def infer(system: System, sig: Signature, ctx: Context, t: ProofTerm) -> Formula:
    """Synthesize the formula proved by `t` under `ctx`; raises CheckError."""
    validate_signature(sig, system)
    validate_context(sig, ctx, system)
    return Checker(system, sig).infer(ctx, t)


def check_discipline(system: System, node: Em1, sig: Signature,
                     path: Path = ()) -> None:
    """Occurrence discipline of an exception node: in the left branch the
    bound hypothesis occurs only as the universal axiom with the node's
    annotation, in the right branch only as the matching witness axiom, and
    no free variable of the annotation is captured at an occurrence."""
    full = Forall(node.ivar, node.matrix)
    if system.is_ha:
        if not isinstance(node.matrix, Atom):
            raise CheckError(ANNOTATION_MISMATCH, path,
                             "exception matrix must be atomic in arithmetic")
        wit_full: Formula = Exists(node.ivar, arith.complement_atom(sig, node.matrix))
    else:
        wit_full = Exists(node.ivar, Not(node.matrix))
    shared = free_ind_vars(full)
    _scan_occurrences(node.left, node.hvar, "hyp", full, shared,
                      path + ("left",))
    _scan_occurrences(node.right, node.hvar, "wit", wit_full, shared,
                      path + ("right",))


def _scan_occurrences(t: ProofTerm, a: str, side: str, full: Formula,
                      shared: frozenset[str], path: Path,
                      ind_bound: frozenset[str] = frozenset()) -> None:
    match t:
        case Hyp(h, iv, mat) if h == a:
            if side != "hyp":
                raise CheckError(DISCIPLINE_VIOLATION, path,
                                 f"{a!r} occurs as a universal hypothesis on the "
                                 "witness side")
            if not alpha_eq(Forall(iv, mat), full):
                raise CheckError(DISCIPLINE_VIOLATION, path,
                                 f"occurrence of {a!r} carries "
                                 f"{format_formula(Forall(iv, mat))}, binder says "
                                 f"{format_formula(full)}")
            if shared & ind_bound:
                captured = sorted(shared & ind_bound)
                raise CheckError(DISCIPLINE_VIOLATION, path,
                                 f"variables {captured} of the exception matrix are "
                                 "captured at an occurrence")
            return
        case Wit(h, iv, mat) if h == a:
            if side != "wit":
                raise CheckError(DISCIPLINE_VIOLATION, path,
                                 f"{a!r} occurs as a witness hypothesis on the "
                                 "universal side")
            if not alpha_eq(Exists(iv, mat), full):
                raise CheckError(DISCIPLINE_VIOLATION, path,
                                 f"occurrence of {a!r} carries "
                                 f"{format_formula(Exists(iv, mat))}, binder says "
                                 f"{format_formula(full)}")
            if shared & ind_bound:
                captured = sorted(shared & ind_bound)
                raise CheckError(DISCIPLINE_VIOLATION, path,
                                 f"variables {captured} of the exception matrix are "
                                 "captured at an occurrence")
            return
        case Em0(_, h, l, r) | Em1(h, _, _, l, r) if h == a:
            return  # shadowed below
        case ILam(v, body):
            _scan_occurrences(body, a, side, full, shared, path + ("body",),
                              ind_bound | {v})
            return
        case ExElim(s, iv, _, b):
            _scan_occurrences(s, a, side, full, shared, path + ("scrut",), ind_bound)
            _scan_occurrences(b, a, side, full, shared, path + ("body",),
                              ind_bound | {iv})
            return
    from .syntax import proof_children
    for label, child in proof_children(t):
        _scan_occurrences(child, a, side, full, shared, path + (label,), ind_bound)


def is_quasi_closed(t: ProofTerm) -> bool:
    """True iff the only free variables are hypothesis variables whose every
    occurrence is a universal axiom over a simply universal formula."""
    if free_proof_vars(t) or free_ind_vars(t):
        return False
    return _quasi_occurrences_ok(t, frozenset())


def _quasi_occurrences_ok(t: ProofTerm, bound: frozenset[str]) -> bool:
    match t:
        case Hyp(h, iv, mat):
            return h in bound or is_simply_universal(Forall(iv, mat))
        case Wit(h, _, _):
            return h in bound
        case Em0(_, h, l, r) | Em1(h, _, _, l, r):
            return (_quasi_occurrences_ok(l, bound | {h})
                    and _quasi_occurrences_ok(r, bound | {h}))
    from .syntax import proof_children
    return all(_quasi_occurrences_ok(c, bound) for _, c in proof_children(t))
