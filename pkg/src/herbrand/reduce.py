"""Small-step reduction and the deterministic normalization driver.

The strategy is leftmost-outermost over a fixed preorder traversal.  At an
exception node the rule priority is: drop the exception branch when the
hypothesis is unused; otherwise raise on the leftmost active hypothesis
application (in arithmetic: rewrite the leftmost closed-true application,
then switch on the leftmost closed-false one).  Strong normalization of
typed terms backs termination; fuel converts any bug into a diagnosable
result instead of a hang.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import arith
from .printer import em1_wit_matrix
from .syntax import (
    App, Atom, Case, Context, Em0, Em1, ExElim, ExIntro, Exists, Formula,
    Hyp, Hypz, IApp, ILam, IndTerm, Inj, Lam, Pair, Post, Proj, ProofTerm,
    Rec, Signature, Succ, Truth, Var, Wit, Zero, free_hyp_vars,
    free_ind_vars, fresh_name, numeral, numeral_value, proof_children,
    rename_hyp_var, replace_child, subst_ind, subst_proof,
)
from .typecheck import System

Path = tuple[str, ...]


@dataclass(frozen=True)
class Step:
    rule: str
    path: Path
    before: ProofTerm
    after: ProofTerm


@dataclass(frozen=True)
class NormalizeResult:
    term: ProofTerm
    trace: tuple[Step, ...]
    normal: bool

    @property
    def steps(self) -> int:
        return len(self.trace)


class DisciplineError(Exception):
    """An exception substitution hit an occurrence it cannot rewrite."""


DEFAULT_FUEL = 10 ** 5


# ---------------------------------------------------------------------------
# active hypothesis occurrences

def active_hyp(u: ProofTerm, a: str) -> tuple[IndTerm, Formula] | None:
    """Leftmost-outermost application of the hypothesis `a` to a closed
    individual term, with the hypothesis matrix closed under its binder."""
    for m, _, mat, _ in _hyp_applications(u, a):
        return m, mat
    return None


def _hyp_applications(u: ProofTerm, a: str, path: Path = ()):
    """Yield (argument, bound var, matrix, path) for applications
    `hyp[a] @ m` with m closed and the matrix closed but for the bound
    variable, in preorder."""
    match u:
        case IApp(Hyp(h, iv, mat), m) if h == a:
            if not free_ind_vars(m) and free_ind_vars(mat) <= {iv}:
                yield m, iv, mat, path
            return
        case Em0(_, h, _, _) | Em1(h, _, _, _, _) if h == a:
            return  # shadowed
    for label, child in proof_children(u):
        yield from _hyp_applications(child, a, path + (label,))


# ---------------------------------------------------------------------------
# exception substitution

def exc_subst_wit(v: ProofTerm, a: str, m: IndTerm, sig: Signature | None = None,
                  ha: bool = False) -> ProofTerm:
    """Replace every free witness occurrence of `a` by a concrete witness
    pair at `m`; the proof component is an anonymous assumption (in
    arithmetic: the canonical proof of a true atom).  Any other free
    occurrence of `a` is an error."""
    if a not in free_hyp_vars(v):
        return v
    match v:
        case Wit(h, iv, mat) if h == a:
            inst = subst_ind(mat, m, iv)
            proof = Truth() if ha else Hypz(inst)
            return ExIntro(m, proof, Exists(iv, mat))
        case Hyp(h, _, _) if h == a:
            raise DisciplineError(
                f"free occurrence of {a!r} is a universal hypothesis, not a witness")
        case Em0(p, h, l, r):
            if h == a:
                return v
            return Em0(p, h, exc_subst_wit(l, a, m, sig, ha),
                       exc_subst_wit(r, a, m, sig, ha))
        case Em1(h, iv, mat, l, r):
            if h == a:
                return v
            return Em1(h, iv, mat, exc_subst_wit(l, a, m, sig, ha),
                       exc_subst_wit(r, a, m, sig, ha))
    rebuilt = v
    for label, child in proof_children(v):
        rebuilt = replace_child(rebuilt, label, exc_subst_wit(child, a, m, sig, ha))
    return rebuilt


def exc_subst_hyp(u: ProofTerm, a: str, m: IndTerm, only_arg: bool = False) -> ProofTerm:
    """Replace applications of the universal hypothesis `a` by anonymous
    assumptions at the applied instance.  With `only_arg`, only applications
    whose argument equals `m` are replaced (the raise rule's reading); the
    default replaces every application at its own argument.  A free
    occurrence of `a` not in applied position is an error."""
    if a not in free_hyp_vars(u):
        return u
    match u:
        case IApp(Hyp(h, iv, mat), arg) if h == a:
            if only_arg and arg != m:
                return u
            return Hypz(subst_ind(mat, arg, iv))
        case Hyp(h, _, _) if h == a:
            raise DisciplineError(
                f"free occurrence of {a!r} is not in applied position")
        case Wit(h, _, _) if h == a:
            raise DisciplineError(
                f"free occurrence of {a!r} is a witness, not a universal hypothesis")
        case Em0(p, h, l, r):
            if h == a:
                return u
            return Em0(p, h, exc_subst_hyp(l, a, m, only_arg),
                       exc_subst_hyp(r, a, m, only_arg))
        case Em1(h, iv, mat, l, r):
            if h == a:
                return u
            return Em1(h, iv, mat, exc_subst_hyp(l, a, m, only_arg),
                       exc_subst_hyp(r, a, m, only_arg))
    rebuilt = u
    for label, child in proof_children(u):
        rebuilt = replace_child(rebuilt, label, exc_subst_hyp(child, a, m, only_arg))
    return rebuilt


# ---------------------------------------------------------------------------
# single step

def step(system: System, sig: Signature, t: ProofTerm) -> Step | None:
    """The unique next step under the deterministic strategy, or None if the
    term is normal."""
    found = _find_step(system, sig, t)
    if found is None:
        return None
    rule, path, after = found
    return Step(rule, path, t, after)


def _find_step(system: System, sig: Signature,
               t: ProofTerm) -> tuple[str, Path, ProofTerm] | None:
    local = _step_here(system, sig, t)
    if local is not None:
        return local
    for label, child in proof_children(t):
        found = _find_step(system, sig, child)
        if found is not None:
            rule, path, new_child = found
            return rule, (label,) + path, replace_child(t, label, new_child)
    return None


def _step_here(system: System, sig: Signature,
               t: ProofTerm) -> tuple[str, Path, ProofTerm] | None:
    il_em1 = system is System.IL_EM1
    ha = system is System.HA_EM1
    match t:
        case App(Lam(v, _, body), arg):
            return "beta", (), subst_proof(body, arg, v)
        case App(Em0(p, h, l, r), w) if il_em1:
            h = _freshen_em0(h, (l, r), (w,))
            return "perm-app", (), Em0(p, h, App(l, w), App(r, w))
        case IApp(ILam(v, body), m):
            return "beta-ind", (), subst_ind(body, m, v)
        case IApp(Em0(p, h, l, r), m) if il_em1:
            return "perm-app", (), Em0(p, h, IApp(l, m), IApp(r, m))
        case IApp(Hyp(h, iv, mat), n) if ha:
            if (not free_ind_vars(n) and free_ind_vars(mat) <= {iv}
                    and _eval_instance(sig, mat, iv, n)):
                return "ha-hyp-true", (), Truth()
        case Proj(i, Pair(l, r)):
            return "proj", (), l if i == 0 else r
        case Proj(i, Em0(p, h, l, r)) if il_em1:
            return "perm-proj", (), Em0(p, h, Proj(i, l), Proj(i, r))
        case Case(Inj(i, _, b), lv, lb, rv, rb):
            return "case", (), subst_proof(lb if i == 0 else rb, b,
                                           lv if i == 0 else rv)
        case Case(Em0(p, h, l, r), lv, lb, rv, rb) if il_em1:
            h = _freshen_em0(h, (l, r), (lb, rb))
            return "perm-case", (), Em0(p, h, Case(l, lv, lb, rv, rb),
                                        Case(r, lv, lb, rv, rb))
        case ExElim(ExIntro(m, b, _), iv, pv, body):
            return "dest", (), subst_proof(subst_ind(body, m, iv), b, pv)
        case ExElim(Em0(p, h, l, r), iv, pv, body) if il_em1:
            h = _freshen_em0(h, (l, r), (body,))
            if iv in free_ind_vars(p):
                iv2 = fresh_name(iv, free_ind_vars(p) | free_ind_vars(body))
                body = subst_ind(body, Var(iv2), iv)
                iv = iv2
            return "perm-dest", (), Em0(p, h, ExElim(l, iv, pv, body),
                                        ExElim(r, iv, pv, body))
        case Em1(a, _, _, u, _) if il_em1:
            if a not in free_hyp_vars(u):
                return "em1-drop", (), u
            act = active_hyp(u, a)
            if act is not None:
                m, _ = act
                return "em1-raise", (), _raise(sig, t, m)
        case Em1(a, iv, mat, u, v) if ha:
            if a not in free_hyp_vars(u):
                return "ha-em1-drop", (), u
            first_false: IndTerm | None = None
            for n, occ_iv, occ_mat, occ_path in _hyp_applications(u, a):
                if _eval_instance(sig, occ_mat, occ_iv, n):
                    rewritten = _rewrite_at(u, occ_path, Truth())
                    return ("ha-hyp-true", ("left",) + occ_path,
                            Em1(a, iv, mat, rewritten, v))
                if first_false is None:
                    first_false = n
            if first_false is not None:
                return "ha-em1-false", (), exc_subst_wit(v, a, first_false, sig,
                                                         ha=True)
        case Rec(base, stp, m) if ha:
            if isinstance(m, Zero):
                return "rec-zero", (), base
            if isinstance(m, Succ) and numeral_value(m) is not None:
                n = m.arg
                return "rec-succ", (), App(IApp(stp, n), Rec(base, stp, n))
    return None


def _eval_instance(sig: Signature, mat: Formula, iv: str, n: IndTerm) -> bool:
    return arith.eval_atomic(sig, subst_ind(mat, n, iv))


def _rewrite_at(t: ProofTerm, path: Path, new: ProofTerm) -> ProofTerm:
    if not path:
        return new
    label = path[0]
    for lab, child in proof_children(t):
        if lab == label:
            return replace_child(t, label, _rewrite_at(child, path[1:], new))
    raise ValueError(f"no child {label!r} in {type(t).__name__}")


def _freshen_em0(h: str, branches: tuple[ProofTerm, ...],
                 carried: tuple[ProofTerm, ...]) -> str:
    """A split's recorded name binds nothing, but the checker files branch
    assumptions under it; pick a fresh one if duplicated parts use it free."""
    used = frozenset()
    for c in carried:
        used |= free_hyp_vars(c)
    if h in used:
        for b in branches:
            used |= free_hyp_vars(b)
        return fresh_name(h, set(used) | {h})
    return h


def _raise(sig: Signature, node: Em1, m: IndTerm) -> ProofTerm:
    """The raise rule: split on the truth of the instance, with the ordinary
    branch continuing under a re-bound exception around the substituted
    occurrences.  The inner binder is freshened so the assumption filed by
    the split stays visible to the substituted occurrences."""
    a, iv, mat, u, v = node.hvar, node.ivar, node.matrix, node.left, node.right
    inst = subst_ind(mat, m, iv)
    left = exc_subst_wit(v, a, m, sig)
    u_sub = exc_subst_hyp(u, a, m, only_arg=True)
    a2 = fresh_name(a, set(free_hyp_vars(u_sub) | free_hyp_vars(v)) | {a})
    inner = Em1(a2, iv, mat, rename_hyp_var(u_sub, a, a2), rename_hyp_var(v, a, a2))
    return Em0(inst, a, left, inner)


# ---------------------------------------------------------------------------
# driver

def normalize(system: System, sig: Signature, t: ProofTerm,
              fuel: int = DEFAULT_FUEL) -> NormalizeResult:
    """Iterate `step` until normal or out of fuel; the trace records every
    step taken."""
    trace: list[Step] = []
    current = t
    for _ in range(fuel):
        s = step(system, sig, current)
        if s is None:
            return NormalizeResult(current, tuple(trace), True)
        trace.append(s)
        current = s.after
    if step(system, sig, current) is None:
        return NormalizeResult(current, tuple(trace), True)
    return NormalizeResult(current, tuple(trace), False)
