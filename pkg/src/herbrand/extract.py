"""Head-form analysis, Herbrand normal forms, and witness extraction.

A quasi-closed proof of a closed existential normalizes to a tree of
propositional splits over existential introductions; flattening that tree
left to right yields the candidate witnesses, and wrapping each leaf in
injections rebuilds a proof of the corresponding disjunction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .printer import format_formula
from .reduce import DEFAULT_FUEL, NormalizeResult, normalize
from .syntax import (
    App, Case, Context, Em0, Em1, ExElim, ExIntro, Exists, Formula, Hyp,
    IApp, ILam, IndTerm, Inj, Lam, Or, Proj, ProofTerm, Signature,
    free_ind_vars, is_negative, is_propositional, is_simply_universal,
    proof_children, subst_ind,
)
from .typecheck import Checker, CheckError, System, check, is_quasi_closed


# ---------------------------------------------------------------------------
# head decomposition

Binder = tuple  # ("lam", var, annot) | ("ilam", var)
Frame = tuple   # ("app", t) | ("iapp", m) | ("proj", i) | ("case", lv, lb, rv, rb)
                # | ("dest", iv, pv, body)


@dataclass(frozen=True)
class HeadForm:
    prefix: tuple[Binder, ...]
    head: ProofTerm
    spine: tuple[Frame, ...]


def head_decompose(t: ProofTerm) -> HeadForm:
    """Unique decomposition into leading binders, a head, and a spine of
    eliminations; `reassemble` inverts it."""
    prefix: list[Binder] = []
    while True:
        match t:
            case Lam(v, annot, body):
                prefix.append(("lam", v, annot))
                t = body
            case ILam(v, body):
                prefix.append(("ilam", v))
                t = body
            case _:
                break
    frames: list[Frame] = []
    while True:
        match t:
            case App(fn, arg):
                frames.append(("app", arg))
                t = fn
            case IApp(fn, arg):
                frames.append(("iapp", arg))
                t = fn
            case Proj(i, body):
                frames.append(("proj", i))
                t = body
            case Case(s, lv, lb, rv, rb):
                frames.append(("case", lv, lb, rv, rb))
                t = s
            case ExElim(s, iv, pv, body):
                frames.append(("dest", iv, pv, body))
                t = s
            case _:
                break
    frames.reverse()
    return HeadForm(tuple(prefix), t, tuple(frames))


def reassemble(hf: HeadForm) -> ProofTerm:
    t = hf.head
    for frame in hf.spine:
        match frame:
            case ("app", arg):
                t = App(t, arg)
            case ("iapp", arg):
                t = IApp(t, arg)
            case ("proj", i):
                t = Proj(i, t)
            case ("case", lv, lb, rv, rb):
                t = Case(t, lv, lb, rv, rb)
            case ("dest", iv, pv, body):
                t = ExElim(t, iv, pv, body)
            case _:
                raise ValueError(f"bad spine frame {frame!r}")
    for binder in reversed(hf.prefix):
        match binder:
            case ("lam", v, annot):
                t = Lam(v, annot, t)
            case ("ilam", v):
                t = ILam(v, t)
            case _:
                raise ValueError(f"bad prefix binder {binder!r}")
    return t


# ---------------------------------------------------------------------------
# Herbrand normal forms

Shape = Union[tuple, None]  # ("leaf",) | ("split", prop, hvar, left, right)


@dataclass(frozen=True)
class HerbrandNF:
    leaves: tuple[tuple[IndTerm, ProofTerm], ...]
    shape: tuple

    def witnesses(self) -> tuple[IndTerm, ...]:
        return tuple(w for w, _ in self.leaves)


def is_hnf(t: ProofTerm) -> HerbrandNF | None:
    """Present iff `t` is a split tree over existential introductions; the
    caller is responsible for `t` being normal."""
    match t:
        case ExIntro(w, b, _):
            return HerbrandNF(((w, b),), ("leaf",))
        case Em0(p, h, l, r):
            left = is_hnf(l)
            right = is_hnf(r)
            if left is None or right is None:
                return None
            return HerbrandNF(left.leaves + right.leaves,
                              ("split", p, h, left.shape, right.shape))
    return None


# ---------------------------------------------------------------------------
# witness extraction

class ExtractionError(Exception):
    pass


class FuelExhausted(ExtractionError):
    def __init__(self, result: NormalizeResult):
        super().__init__(f"no normal form within {result.steps} steps")
        self.result = result


class NotHerbrandNormal(ExtractionError):
    """The normal form of a checked quasi-closed existential proof is not of
    the shape the extraction theorems guarantee; a kernel soundness bug."""


@dataclass(frozen=True)
class ExtractionResult:
    witnesses: tuple[IndTerm, ...]
    leaves: tuple[tuple[IndTerm, ProofTerm], ...]
    normal_form: ProofTerm
    trace: tuple
    hnf: HerbrandNF


def extract_witnesses(system: System, sig: Signature, ctx: Context,
                      t: ProofTerm, goal: Formula,
                      fuel: int = DEFAULT_FUEL) -> ExtractionResult:
    """Check, normalize, and read the witnesses off the normal form.  In the
    split-free systems the normal form must be a single existential
    introduction; with splits it must be a Herbrand normal form."""
    if not isinstance(goal, Exists):
        raise ExtractionError(f"goal {format_formula(goal)} is not existential")
    if free_ind_vars(goal):
        raise ExtractionError(f"goal {format_formula(goal)} is not closed")
    check(system, sig, ctx, t, goal)
    if not is_quasi_closed(t):
        raise ExtractionError("proof term is not quasi-closed")
    result = normalize(system, sig, t, fuel)
    if not result.normal:
        raise FuelExhausted(result)
    hnf = is_hnf(result.term)
    if hnf is None:
        raise NotHerbrandNormal(
            f"normal form has head {type(result.term).__name__}, "
            "which the extraction theorems exclude")
    if system is not System.IL_EM1 and len(hnf.leaves) != 1:
        raise NotHerbrandNormal(
            f"{system.value} admits no splits, got {len(hnf.leaves)} leaves")
    return ExtractionResult(hnf.witnesses(), hnf.leaves, result.term,
                            result.trace, hnf)


# ---------------------------------------------------------------------------
# Herbrand disjunction

def herbrand_disjunction(system: System, sig: Signature, ctx: Context,
                         hnf: HerbrandNF, goal: Formula) -> tuple[Formula, ProofTerm]:
    """The right-nested disjunction of goal instances at the extracted
    witnesses, with a proof built by wrapping each leaf in injections and
    rebuilding the split spine.  The emitted proof is re-checked."""
    if not isinstance(goal, Exists):
        raise ExtractionError(f"goal {format_formula(goal)} is not existential")
    instances = [subst_ind(goal.body, w, goal.var) for w, _ in hnf.leaves]

    def nested(i: int) -> Formula:
        if i == len(instances) - 1:
            return instances[i]
        return Or(instances[i], nested(i + 1))

    disjunction = nested(0)

    def wrap(i: int, proof: ProofTerm) -> ProofTerm:
        # proof of instances[i], wrapped into a proof of the disjunction
        out = proof if i == len(instances) - 1 else Inj(0, nested(i + 1), proof)
        for j in range(i - 1, -1, -1):
            out = Inj(1, instances[j], out)
        return out

    counter = 0

    def rebuild(shape: tuple) -> ProofTerm:
        nonlocal counter
        match shape:
            case ("leaf",):
                proof = wrap(counter, hnf.leaves[counter][1])
                counter += 1
                return proof
            case ("split", p, h, l, r):
                return Em0(p, h, rebuild(l), rebuild(r))
        raise ValueError(f"bad shape {shape!r}")

    proof = rebuild(hnf.shape)
    check(system, sig, ctx, proof, disjunction)
    return disjunction, proof


# ---------------------------------------------------------------------------
# normal form property

@dataclass(frozen=True)
class NormalFormReport:
    violations: tuple[tuple[int, tuple[str, ...], str], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_normal_form_property(system: System, sig: Signature, ctx: Context,
                               t: ProofTerm) -> NormalFormReport:
    """For a normal term of existential or propositional type in a context of
    negative propositional entries and simply universal hypotheses: every
    universal-hypothesis occurrence must be an active application (closed
    argument), and the term itself must not be an exception node."""
    for e in ctx.visible():
        if e.kind == "univ":
            if not is_simply_universal(e.formula):
                raise ExtractionError(
                    f"context hypothesis {e.name!r} is not simply universal")
        elif e.kind == "var" or e.kind == "prop":
            if not is_negative(e.formula):
                raise ExtractionError(
                    f"context entry {e.name!r} is not negative propositional")
        else:
            raise ExtractionError(
                f"context entry {e.name!r} has no place in the restricted shape")
    hyp_names = frozenset(e.name for e in ctx.visible() if e.kind == "univ")
    violations: list[tuple[int, tuple[str, ...], str]] = []
    if isinstance(t, Em1):
        violations.append((2, (), "normal form is an exception node"))
    _scan_inactive(t, hyp_names, (), violations, applied_closed=False)
    return NormalFormReport(tuple(violations))


def _scan_inactive(t: ProofTerm, names: frozenset[str], path: tuple[str, ...],
                   out: list, applied_closed: bool) -> None:
    match t:
        case Hyp(h, iv, mat) if h in names:
            if not applied_closed or free_ind_vars(mat) - {iv}:
                out.append((1, path, f"hypothesis {h!r} occurs inactively"))
            return
        case IApp(fn, arg):
            _scan_inactive(fn, names, path + ("fn",), out,
                           applied_closed=not free_ind_vars(arg))
            return
        case Em0(_, h, l, r) | Em1(h, _, _, l, r):
            inner = names - {h}
            _scan_inactive(l, inner, path + ("left",), out, applied_closed=False)
            _scan_inactive(r, inner, path + ("right",), out, applied_closed=False)
            return
    for label, child in proof_children(t):
        _scan_inactive(child, names, path + (label,), out, applied_closed=False)
