"""Exhaustive exploration of all reduction orders (test-only).

Unlike the kernel's deterministic strategy, the relation explored here fires
every rule at every position, and an exception node raises on every active
argument, not just the leftmost one.
"""

from __future__ import annotations

import random

from helpers import canon
from herbrand import reduce as red
from herbrand.arith import eval_atomic
from herbrand.syntax import (
    And, App, Atom, Bottom, Case, Const, Context, CtxEntry, Em0, Em1, ExElim,
    ExIntro, Exists, Forall, Formula, Hyp, Hypz, IApp, ILam, Imp, Inj, Lam,
    Not, Or, Pair, Post, Proj, ProofTerm, ProofVar, Rec, Signature, Succ,
    Truth, Var, Wit, Zero, free_hyp_vars, free_ind_vars, fresh_name, numeral,
    numeral_value, proof_children, replace_child, subst_ind, subst_proof,
)
from herbrand.typecheck import System


def candidates_at(system: System, sig: Signature, t: ProofTerm) -> list[tuple[str, ProofTerm]]:
    """Every rule instance applicable at this node."""
    il_em1 = system is System.IL_EM1
    ha = system is System.HA_EM1
    out: list[tuple[str, ProofTerm]] = []
    match t:
        case App(Lam(v, _, body), arg):
            out.append(("beta", subst_proof(body, arg, v)))
        case App(Em0(p, h, l, r), w) if il_em1:
            out.append(("perm-app", Em0(p, _fresh_h(h, (l, r), (w,)), App(l, w), App(r, w))))
        case IApp(ILam(v, body), m):
            out.append(("beta-ind", subst_ind(body, m, v)))
        case IApp(Em0(p, h, l, r), m) if il_em1:
            out.append(("perm-app", Em0(p, h, IApp(l, m), IApp(r, m))))
        case IApp(Hyp(h, iv, mat), n) if ha:
            if (not free_ind_vars(n) and free_ind_vars(mat) <= {iv}
                    and eval_atomic(sig, subst_ind(mat, n, iv))):
                out.append(("ha-hyp-true", Truth()))
        case Proj(i, Pair(l, r)):
            out.append(("proj", l if i == 0 else r))
        case Proj(i, Em0(p, h, l, r)) if il_em1:
            out.append(("perm-proj", Em0(p, h, Proj(i, l), Proj(i, r))))
        case Case(Inj(i, _, b), lv, lb, rv, rb):
            out.append(("case", subst_proof(lb if i == 0 else rb, b,
                                            lv if i == 0 else rv)))
        case Case(Em0(p, h, l, r), lv, lb, rv, rb) if il_em1:
            h2 = _fresh_h(h, (l, r), (lb, rb))
            out.append(("perm-case", Em0(p, h2, Case(l, lv, lb, rv, rb),
                                         Case(r, lv, lb, rv, rb))))
        case ExElim(ExIntro(m, b, _), iv, pv, body):
            out.append(("dest", subst_proof(subst_ind(body, m, iv), b, pv)))
        case ExElim(Em0(p, h, l, r), iv, pv, body) if il_em1:
            h2 = _fresh_h(h, (l, r), (body,))
            if iv in free_ind_vars(p):
                iv2 = fresh_name(iv, free_ind_vars(p) | free_ind_vars(body))
                body = subst_ind(body, Var(iv2), iv)
                iv = iv2
            out.append(("perm-dest", Em0(p, h2, ExElim(l, iv, pv, body),
                                         ExElim(r, iv, pv, body))))
        case Em1(a, iv, mat, u, v) if il_em1:
            if a not in free_hyp_vars(u):
                out.append(("em1-drop", u))
            seen_args = set()
            for m, _, _, _ in red._hyp_applications(u, a):
                if m in seen_args:
                    continue
                seen_args.add(m)
                out.append(("em1-raise", red._raise(sig, t, m)))
        case Em1(a, iv, mat, u, v) if ha:
            if a not in free_hyp_vars(u):
                out.append(("ha-em1-drop", u))
            seen = set()
            for n, occ_iv, occ_mat, _ in red._hyp_applications(u, a):
                if n in seen:
                    continue
                seen.add(n)
                if not eval_atomic(sig, subst_ind(occ_mat, n, occ_iv)):
                    out.append(("ha-em1-false",
                                red.exc_subst_wit(v, a, n, sig, ha=True)))
        case Rec(base, stp, m) if ha:
            if isinstance(m, Zero):
                out.append(("rec-zero", base))
            elif isinstance(m, Succ) and numeral_value(m) is not None:
                out.append(("rec-succ", App(IApp(stp, m.arg), Rec(base, stp, m.arg))))
    return out


def _fresh_h(h, branches, carried):
    used = frozenset()
    for c in carried:
        used |= free_hyp_vars(c)
    if h in used:
        for b in branches:
            used |= free_hyp_vars(b)
        return fresh_name(h, set(used) | {h})
    return h


def all_successors(system: System, sig: Signature, t: ProofTerm) -> list[tuple[str, ProofTerm]]:
    out = list(candidates_at(system, sig, t))
    for label, child in proof_children(t):
        for rule, new_child in all_successors(system, sig, child):
            out.append((rule, replace_child(t, label, new_child)))
    return out


class PathTooLong(Exception):
    pass


def explore(system: System, sig: Signature, t: ProofTerm,
            max_path: int = 1000) -> tuple[set, int]:
    """Walk the whole reduction graph; returns (normal form keys, longest
    path length).  Raises PathTooLong if any path exceeds max_path and
    RecursionError-like ValueError on a cycle (impossible if SN holds)."""
    memo: dict = {}
    on_stack: set = set()

    def go(t: ProofTerm) -> tuple[frozenset, int]:
        key = canon(t)
        if key in memo:
            return memo[key]
        if key in on_stack:
            raise ValueError("cycle in the reduction graph")
        on_stack.add(key)
        succs = all_successors(system, sig, t)
        if not succs:
            result = (frozenset({key}), 0)
        else:
            nfs: frozenset = frozenset()
            longest = 0
            for _, s in succs:
                sub_nfs, sub_len = go(s)
                nfs |= sub_nfs
                longest = max(longest, sub_len + 1)
                if longest > max_path:
                    raise PathTooLong(f"a reduction path exceeds {max_path} steps")
            result = (nfs, longest)
        on_stack.discard(key)
        memo[key] = result
        return result

    return go(t)


# ---------------------------------------------------------------------------
# well-typed term generation

GEN_SIG_SRC = """
sig { const c; const d; pred Q/0; pred R/0; pred P/1; }
"""

GEN_CTX_SRC = """
ctx {
  x : Q;
  y : Q -> Q;
  p : Q & R;
  s : Q | R;
  e : ex w. P(w);
  u : all w. P(w);
  hyp hq : Q;
  hyp hr : R;
}
"""


def generator_env():
    from herbrand.parser import parse_file
    pf = parse_file(GEN_SIG_SRC + GEN_CTX_SRC + "goal { Q } proof { x }")
    return pf.signature, pf.context


Q = Atom("Q")
R = Atom("R")


def _pv(name: str) -> Formula:
    return Atom("P", (Var(name),))


def _pc(name: str) -> Formula:
    return Atom("P", (Const(name),))


EX_SIMPLE = Exists("v", _pv("v"))
EX_IMP = Exists("v", Imp(_pv("v"), _pv("v")))


def gen_term(rng: random.Random, goal: Formula, budget: int,
             depth: int = 0) -> ProofTerm | None:
    """A random well-typed term of the given goal type over the generator
    context, with at most `budget` proof nodes."""
    options = []
    if goal == Q:
        options += [("x", 1), ("hypz", 1), ("app-y", 2), ("proj", 2),
                    ("beta", 3), ("case", 4), ("em0", 3), ("dest-drop", 3)]
    elif goal == R:
        options += [("hypz-r", 1), ("proj-r", 2), ("beta", 3), ("em0", 3)]
    elif goal == And(Q, R):
        options += [("p", 1), ("pair", 3), ("beta", 3)]
    elif goal == Or(Q, R):
        options += [("s", 1), ("inl", 2), ("inr", 2), ("beta", 3), ("em0", 3)]
    elif goal == EX_SIMPLE:
        options += [("exi-u", 3), ("dest-repack", 4), ("em0", 3), ("beta", 3)]
    elif goal == EX_IMP:
        options += [("exi-lam", 4), ("em1-raise", 9), ("em1-drop", 6),
                    ("em0", 3), ("beta", 3)]
    options = [(o, c) for o, c in options if c <= budget]
    if not options:
        return None
    kind, _ = rng.choice(options)
    sub = budget - 1

    def rec(g: Formula, b: int) -> ProofTerm | None:
        return gen_term(rng, g, b, depth + 1)

    def exi_lam(witness: str) -> ProofTerm:
        return ExIntro(Const(witness),
                       Lam("q", _pc(witness), ProofVar("q")), EX_IMP)

    match kind:
        case "x":
            return ProofVar("x")
        case "hypz":
            return Hypz(Q)
        case "hypz-r":
            return Hypz(R)
        case "p":
            return ProofVar("p")
        case "s":
            return ProofVar("s")
        case "app-y":
            arg = rec(Q, sub - 1)
            return None if arg is None else App(ProofVar("y"), arg)
        case "proj":
            inner = rec(And(Q, R), sub)
            return None if inner is None else Proj(0, inner)
        case "proj-r":
            inner = rec(And(Q, R), sub)
            return None if inner is None else Proj(1, inner)
        case "pair":
            l = rec(Q, (sub - 1) // 2)
            if l is None:
                return None
            r = rec(R, sub - 1 - _size(l))
            return None if r is None else Pair(l, r)
        case "inl":
            inner = rec(Q, sub)
            return None if inner is None else Inj(0, R, inner)
        case "inr":
            inner = rec(R, sub)
            return None if inner is None else Inj(1, Q, inner)
        case "beta":
            body = rec(goal, (sub - 2) // 2)
            if body is None:
                return None
            arg = rec(Q, sub - 1 - _size(body))
            if arg is None:
                return None
            v = f"z{depth}"
            return App(Lam(v, Q, body), arg)
        case "case":
            scrut = rec(Or(Q, R), (sub - 2) // 2)
            if scrut is None:
                return None
            rest = sub - _size(scrut)
            lb = rec(Q, rest // 2)
            if lb is None:
                return None
            rb = rec(Q, rest - _size(lb))
            if rb is None:
                return None
            return Case(scrut, f"zl{depth}", lb, f"zr{depth}", rb)
        case "em0":
            l = rec(goal, (sub - 1) // 2)
            if l is None:
                return None
            r = rec(goal, sub - _size(l))
            if r is None:
                return None
            return Em0(Q, f"h{depth}", l, r)
        case "dest-drop":
            body = rec(goal, sub - 1)
            return None if body is None else ExElim(ProofVar("e"), f"w{depth}", f"z{depth}", body)
        case "exi-u":
            which = rng.choice(["c", "d"])
            return ExIntro(Const(which), IApp(ProofVar("u"), Const(which)),
                           EX_SIMPLE)
        case "dest-repack":
            return ExElim(ProofVar("e"), f"w{depth}", f"z{depth}",
                          ExIntro(Var(f"w{depth}"), ProofVar(f"z{depth}"), EX_SIMPLE))
        case "exi-lam":
            return exi_lam(rng.choice(["c", "d"]))
        case "em1-raise":
            witness = rng.choice(["c", "d"])
            left = ExIntro(Const(witness),
                           Lam("q", _pc(witness),
                               IApp(Hyp(f"a{depth}", "w", _pv("w")), Const(witness))),
                           EX_IMP)
            return Em1(f"a{depth}", "w", _pv("w"), left, exi_lam(rng.choice(["c", "d"])))
        case "em1-drop":
            inner = rec(goal, sub - 5)
            return None if inner is None else Em1(f"a{depth}", "w", _pv("w"),
                                                  inner, exi_lam("c"))
    return None


def _size(t: ProofTerm) -> int:
    return 1 + sum(_size(c) for _, c in proof_children(t))


def generate_typed_terms(count: int, max_nodes: int = 12,
                         seed: int = 20240817) -> list[tuple[Formula, ProofTerm]]:
    """At least `count` distinct well-typed terms of at most `max_nodes`
    proof nodes over the generator context, checked before being returned."""
    from herbrand.typecheck import check
    sig, ctx = generator_env()
    rng = random.Random(seed)
    goals = [Q, R, And(Q, R), Or(Q, R), EX_SIMPLE, EX_IMP]
    seen: set = set()
    out: list[tuple[Formula, ProofTerm]] = []
    attempts = 0
    while len(out) < count and attempts < count * 400:
        attempts += 1
        goal = rng.choice(goals)
        t = gen_term(rng, goal, max_nodes)
        if t is None or _size(t) > max_nodes:
            continue
        key = (goal, canon(t))
        if key in seen:
            continue
        seen.add(key)
        check(System.IL_EM1, sig, ctx, t, goal)
        out.append((goal, t))
    return out
