"""Concrete syntax: lexer and recursive-descent parser for proof files.

A proof file holds an optional `system` directive, optional `sig {...}` and
`ctx {...}` blocks, a `goal {...}` block and a `proof {...}` block.  The
short axiom forms `hyp[a]` / `wit[a]` are resolved against the enclosing
`em1` binder or the declared context; the explicit forms `hyp[a : F]` /
`wit[a : F]` are always accepted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import arith
from .printer import em1_wit_matrix
from .syntax import (
    And, App, Atom, Bottom, Case, Const, Context, CtxEntry, Efq, Em0, Em1,
    ExElim, ExIntro, Exists, FnApp, Forall, Formula, HYP_PROP, HYP_UNIV,
    HYP_WIT, Hyp, Hypz, IApp, ILam, Imp, IndTerm, Inj, Lam, Markov, Not, Or,
    Pair, Post, Proj, ProofTerm, ProofVar, Rec, Signature, Succ, Truth, VAR_KIND,
    Var, Wit, Zero, numeral,
)


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


RESERVED = {
    "fun", "case", "of", "dest", "as", "rec", "post", "tt", "hyp", "wit",
    "hypo", "efq", "mp", "em0", "em1", "fst", "snd", "inl", "inr",
    "all", "ex", "bot", "sig", "ctx", "goal", "proof", "system",
    "const", "pred", "prfun", "prrel", "S", "model", "domain",
}


@dataclass(frozen=True)
class Token:
    kind: str  # ident, number, punct, eof
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<number>\d+)
  | (?P<punct>->|=>|[(){}\[\]<>,;:.|&~@/=-])
""", re.VERBOSE)


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        chunk = m.group(0)
        if m.lastgroup != "ws":
            toks.append(Token(m.lastgroup, chunk, line, col))
        nl = chunk.count("\n")
        if nl:
            line += nl
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    toks.append(Token("eof", "", line, col))
    return toks


@dataclass(frozen=True)
class ProofFile:
    system: str | None
    signature: Signature
    context: Context
    goal: Formula
    proof: ProofTerm | None


class Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.pos = 0
        self.sig = Signature()
        # hvar -> (kind, ivar, matrix) for short hyp/wit resolution
        self.hyp_env: dict[str, tuple[str, str, Formula]] = {}
        self.ind_bound: set[str] = set()

    # -- token plumbing ----------------------------------------------------

    def peek(self, ahead: int = 0) -> Token:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def next(self) -> Token:
        t = self.peek()
        self.pos += 1
        return t

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.col)

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.text != text or t.kind == "eof":
            self.fail(f"expected {text!r}, found {t.text!r}")
        return self.next()

    def at(self, text: str) -> bool:
        return self.peek().text == text and self.peek().kind != "eof"

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.next()
            return True
        return False

    def ident(self, what: str = "identifier", allow_reserved: bool = False) -> str:
        t = self.peek()
        if t.kind != "ident":
            self.fail(f"expected {what}, found {t.text!r}")
        if not allow_reserved and t.text in RESERVED:
            self.fail(f"reserved word {t.text!r} cannot be used as {what}")
        return self.next().text

    # -- individual terms --------------------------------------------------

    def ind_term(self) -> IndTerm:
        t = self.peek()
        if t.text == "S":
            self.next()
            if self.accept("("):
                inner = self.ind_term()
                self.expect(")")
                return Succ(inner)
            return Succ(self.ind_term())
        if t.kind == "number":
            self.next()
            return numeral(int(t.text))
        if t.text == "(":
            self.next()
            inner = self.ind_term()
            self.expect(")")
            return inner
        name = self.ident("individual term")
        if self.at("(") and name in self.sig.functions:
            self.next()
            args = [self.ind_term()]
            while self.accept(","):
                args.append(self.ind_term())
            self.expect(")")
            return FnApp(name, tuple(args))
        if name in self.sig.constants:
            return Const(name)
        return Var(name)

    # -- formulas ------------------------------------------------------------
    # precedence: imp 0 (right assoc), or 1, and 2, not/atom 3

    def formula(self) -> Formula:
        left = self.formula_or()
        if self.accept("->"):
            return Imp(left, self.formula())
        return left

    def formula_or(self) -> Formula:
        left = self.formula_and()
        while self.at("|"):
            # a bare `|` may close a branch list; an Or must be followed by
            # something that can start a formula
            nxt = self.peek(1)
            if nxt.kind not in ("ident", "number") and nxt.text not in ("(", "~"):
                break
            self.next()
            left = Or(left, self.formula_and())
        return left

    def formula_and(self) -> Formula:
        left = self.formula_unary()
        while self.accept("&"):
            left = And(left, self.formula_unary())
        return left

    def formula_unary(self) -> Formula:
        if self.accept("~"):
            return Not(self.formula_unary())
        t = self.peek()
        if t.text == "all" or t.text == "ex":
            self.next()
            v = self.ident("bound variable")
            self.expect(".")
            self.ind_bound.add(v)
            try:
                body = self.formula()
            finally:
                self.ind_bound.discard(v)
            return Forall(v, body) if t.text == "all" else Exists(v, body)
        if t.text == "bot":
            self.next()
            return Bottom()
        if t.text == "(":
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        name = self.ident("predicate")
        if self.at("("):
            self.next()
            args = [self.ind_term()]
            while self.accept(","):
                args.append(self.ind_term())
            self.expect(")")
            return Atom(name, tuple(args))
        return Atom(name, ())

    # -- proof terms ---------------------------------------------------------

    def proof_term(self) -> ProofTerm:
        t = self.peek()
        if t.text == "fun":
            self.next()
            if self.accept("{"):
                v = self.ident("individual binder")
                self.expect("}")
                self.expect("=>")
                self.ind_bound.add(v)
                try:
                    body = self.proof_term()
                finally:
                    self.ind_bound.discard(v)
                return ILam(v, body)
            self.expect("(")
            v = self.ident("proof binder")
            self.expect(":")
            annot = self.formula()
            self.expect(")")
            self.expect("=>")
            return Lam(v, annot, self.proof_term())
        if t.text == "dest":
            self.next()
            scrut = self.app_chain()
            self.expect("as")
            self.expect("(")
            iv = self.ident("individual binder")
            self.expect(",")
            pv = self.ident("proof binder")
            self.expect(")")
            self.expect("=>")
            self.ind_bound.add(iv)
            try:
                body = self.proof_term()
            finally:
                self.ind_bound.discard(iv)
            return ExElim(scrut, iv, pv, body)
        return self.app_chain()

    def app_chain(self) -> ProofTerm:
        term = self.unary_term()
        while True:
            if self.accept("@"):
                term = IApp(term, self.ind_term())
                continue
            t = self.peek()
            if t.kind == "ident" and t.text not in RESERVED:
                term = App(term, self.unary_term())
            elif t.text in ("fst", "snd", "inl", "inr", "tt", "hyp", "wit",
                            "hypo", "efq", "mp", "rec", "post", "em0", "em1",
                            "case", "(", "<"):
                term = App(term, self.unary_term())
            else:
                return term

    def unary_term(self) -> ProofTerm:
        t = self.peek()
        if t.text in ("fst", "snd"):
            self.next()
            return Proj(0 if t.text == "fst" else 1, self.unary_term())
        if t.text in ("inl", "inr"):
            self.next()
            self.expect("[")
            other = self.formula()
            self.expect("]")
            return Inj(0 if t.text == "inl" else 1, other, self.unary_term())
        return self.atom_term()

    def atom_term(self) -> ProofTerm:
        t = self.peek()
        if t.kind == "ident" and t.text not in RESERVED:
            return ProofVar(self.next().text)
        if t.text == "tt":
            self.next()
            return Truth()
        if t.text in ("hyp", "wit"):
            self.next()
            self.expect("[")
            name = self.ident("hypothesis variable")
            if self.accept(":"):
                full = self.formula()
                self.expect("]")
                if t.text == "hyp":
                    if not isinstance(full, Forall):
                        self.fail("hyp annotation must be universal", t)
                    return Hyp(name, full.var, full.body)
                if not isinstance(full, Exists):
                    self.fail("wit annotation must be existential", t)
                return Wit(name, full.var, full.body)
            self.expect("]")
            entry = self.hyp_env.get(name)
            if entry is None:
                self.fail(f"hypothesis variable {name!r} is not in scope; "
                          f"use the explicit form {t.text}[{name} : ...]", t)
            kind, iv, mat = entry
            if t.text == "hyp":
                if kind != "hyp":
                    self.fail(f"{name!r} is a witness hypothesis, not universal", t)
                return Hyp(name, iv, mat)
            if kind != "wit":
                self.fail(f"{name!r} is a universal hypothesis, not a witness", t)
            return Wit(name, iv, mat)
        if t.text == "hypo":
            self.next()
            self.expect("[")
            p = self.formula()
            self.expect("]")
            return Hypz(p)
        if t.text == "efq":
            self.next()
            self.expect("[")
            p = self.formula()
            self.expect("]")
            return Efq(p)
        if t.text == "mp":
            self.next()
            self.expect("[")
            p = self.formula()
            self.expect("]")
            return Markov(p)
        if t.text == "rec":
            self.next()
            self.expect("(")
            base = self.proof_term()
            self.expect(",")
            step = self.proof_term()
            self.expect(",")
            m = self.ind_term()
            self.expect(")")
            return Rec(base, step, m)
        if t.text == "post":
            self.next()
            self.expect("[")
            rule = self.ident("rule name", allow_reserved=True)
            self.expect("]")
            self.expect("(")
            args: list[ProofTerm] = []
            if not self.at(")"):
                args.append(self.proof_term())
                while self.accept(","):
                    args.append(self.proof_term())
            self.expect(")")
            return Post(rule, tuple(args))
        if t.text in ("em0", "em1"):
            self.next()
            self.expect("[")
            annot = self.formula()
            self.expect("]")
            self.expect("{")
            h1 = self.ident("hypothesis binder")
            self.expect(".")
            if t.text == "em0":
                saved = self.hyp_env.pop(h1, None)
                left = self.proof_term()
                self.expect("|")
                h2 = self.ident("hypothesis binder")
                if h2 != h1:
                    self.fail(f"branch binders differ: {h1!r} vs {h2!r}", t)
                self.expect(".")
                right = self.proof_term()
                if saved is not None:
                    self.hyp_env[h1] = saved
                self.expect("}")
                return Em0(annot, h1, left, right)
            if not isinstance(annot, Forall):
                self.fail("em1 annotation must be a universal formula", t)
            iv, mat = annot.var, annot.body
            saved = self.hyp_env.get(h1)
            self.hyp_env[h1] = ("hyp", iv, mat)
            left = self.proof_term()
            self.expect("|")
            h2 = self.ident("hypothesis binder")
            if h2 != h1:
                self.fail(f"branch binders differ: {h1!r} vs {h2!r}", t)
            self.expect(".")
            self.hyp_env[h1] = ("wit", iv, em1_wit_matrix(self.sig, mat))
            right = self.proof_term()
            if saved is not None:
                self.hyp_env[h1] = saved
            else:
                del self.hyp_env[h1]
            self.expect("}")
            return Em1(h1, iv, mat, left, right)
        if t.text == "case":
            self.next()
            scrut = self.app_chain()
            self.expect("of")
            self.expect("{")
            lv = self.ident("proof binder")
            self.expect("=>")
            lbody = self.proof_term()
            self.expect("|")
            rv = self.ident("proof binder")
            self.expect("=>")
            rbody = self.proof_term()
            self.expect("}")
            return Case(scrut, lv, lbody, rv, rbody)
        if t.text == "<":
            self.next()
            left = self.proof_term()
            self.expect(",")
            right = self.proof_term()
            self.expect(">")
            return Pair(left, right)
        if t.text == "(":
            saved = self.pos
            saved_env = dict(self.hyp_env)
            saved_bound = set(self.ind_bound)
            self.next()
            try:
                w = self.ind_term()
                self.expect(",")
                body = self.proof_term()
                self.expect(")")
                self.expect(":")
                annot = self.formula()
                return ExIntro(w, body, annot)
            except ParseError:
                self.pos = saved
                self.hyp_env = saved_env
                self.ind_bound = saved_bound
            self.next()
            term = self.proof_term()
            self.expect(")")
            return term
        self.fail(f"expected a proof term, found {t.text!r}")

    # -- primitive recursive function expressions -----------------------------

    def pr_expr(self) -> arith.PRFun:
        t = self.peek()
        if t.text == "zero":
            self.next()
            return arith.PrZero()
        if t.text == "succ":
            self.next()
            return arith.PrSucc()
        if t.text == "proj":
            self.next()
            self.expect("(")
            i = int(self.num())
            self.expect(",")
            n = int(self.num())
            self.expect(")")
            return arith.PrProj(i, n)
        if t.text == "comp":
            self.next()
            self.expect("(")
            outer = self.pr_expr()
            self.expect(";")
            inner = [self.pr_expr()]
            while self.accept(","):
                inner.append(self.pr_expr())
            self.expect(")")
            return arith.PrComp(outer, tuple(inner))
        if t.text == "rec":
            self.next()
            self.expect("(")
            base = self.pr_expr()
            self.expect(";")
            step = self.pr_expr()
            self.expect(")")
            return arith.PrRec(base, step)
        name = self.ident("function name")
        fn = self.sig.prfuns.get(name)
        if fn is None:
            self.fail(f"unknown primitive recursive function {name!r}", t)
        return fn

    def num(self) -> int:
        t = self.peek()
        if t.kind != "number":
            self.fail("expected a number")
        return int(self.next().text)

    # -- signature / context blocks -------------------------------------------

    def sig_block(self) -> None:
        self.expect("{")
        constants = set(self.sig.constants)
        functions = dict(self.sig.functions)
        predicates = dict(self.sig.predicates)
        complements = dict(self.sig.complements)
        prfuns = dict(self.sig.prfuns)
        prrels = dict(self.sig.prrels)

        def declare(name: str, tok: Token) -> None:
            if (name in constants or name in functions or name in predicates
                    or name in prfuns):
                raise ParseError(f"symbol {name!r} declared twice", tok.line, tok.col)

        while not self.at("}"):
            t = self.peek()
            if self.accept("const"):
                name = self.ident("constant name")
                declare(name, t)
                constants.add(name)
            elif self.accept("fun"):
                name = self.ident("function name")
                declare(name, t)
                self.expect("/")
                functions[name] = self.num()
            elif self.accept("pred"):
                name = self.ident("predicate name")
                declare(name, t)
                self.expect("/")
                predicates[name] = self.num()
                if self.accept("~"):
                    comp = self.ident("complement name")
                    declare(comp, t)
                    self.expect("/")
                    n2 = self.num()
                    if n2 != predicates[name]:
                        self.fail("complement arity differs", t)
                    predicates[comp] = n2
                    complements[name] = comp
                    complements[comp] = name
            elif self.accept("prfun"):
                name = self.ident("function name")
                declare(name, t)
                self.expect("/")
                n = self.num()
                self.expect("=")
                self.sig = Signature(frozenset(constants), functions, predicates,
                                     complements, prfuns, prrels)
                fn = self.pr_expr()
                try:
                    arith.validate_pr(fn)
                except arith.ArithError as e:
                    self.fail(str(e), t)
                if arith.arity(fn) != n:
                    self.fail(f"declared arity {n} but definition has arity "
                              f"{arith.arity(fn)}", t)
                prfuns[name] = fn
            elif self.accept("prrel"):
                name = self.ident("relation name")
                declare(name, t)
                self.expect("/")
                n = self.num()
                self.expect("=")
                self.sig = Signature(frozenset(constants), functions, predicates,
                                     complements, prfuns, prrels)
                fn = self.pr_expr()
                try:
                    arith.validate_pr(fn)
                except arith.ArithError as e:
                    self.fail(str(e), t)
                if arith.arity(fn) != n:
                    self.fail(f"declared arity {n} but definition has arity "
                              f"{arith.arity(fn)}", t)
                self.expect("~")
                comp = self.ident("complement name")
                declare(comp, t)
                predicates[name] = n
                predicates[comp] = n
                complements[name] = comp
                complements[comp] = name
                prrels[name] = arith.PRRel(name, fn, "direct", comp)
                prrels[comp] = arith.PRRel(comp, fn, "complement", name)
            else:
                self.fail(f"expected a declaration, found {t.text!r}")
            self.expect(";")
        self.expect("}")
        self.sig = Signature(frozenset(constants), functions, predicates,
                             complements, prfuns, prrels)

    def ctx_block(self) -> Context:
        self.expect("{")
        entries: list[CtxEntry] = []
        names: set[str] = set()
        while not self.at("}"):
            t = self.peek()
            if self.accept("hyp"):
                name = self.ident("hypothesis variable")
                self.expect(":")
                f = self.formula()
                match f:
                    case Forall(v, b):
                        entries.append(CtxEntry(HYP_UNIV, name, f))
                        self.hyp_env[name] = ("hyp", v, b)
                    case Exists(v, b):
                        entries.append(CtxEntry(HYP_WIT, name, f))
                        self.hyp_env[name] = ("wit", v, b)
                    case _:
                        entries.append(CtxEntry(HYP_PROP, name, f))
            else:
                name = self.ident("proof variable")
                self.expect(":")
                f = self.formula()
                entries.append(CtxEntry(VAR_KIND, name, f))
            if name in names:
                raise ParseError(f"context name {name!r} declared twice",
                                 t.line, t.col)
            names.add(name)
            self.expect(";")
        self.expect("}")
        return Context(tuple(entries))

    # -- whole files -----------------------------------------------------------

    def proof_file(self, require_proof: bool = True) -> ProofFile:
        system: str | None = None
        if self.accept("system"):
            tok = self.peek()
            parts = [self.ident("system name", allow_reserved=True)]
            while self.accept("-"):
                parts.append(self.ident("system name", allow_reserved=True))
            system = "-".join(parts)
            if system not in ("il-hmp", "il-em1", "ha-em1"):
                self.fail(f"unknown system {system!r}", tok)
            self.expect(";")
        if system == "ha-em1":
            self.sig = arith.prelude_signature()
        if self.accept("sig"):
            self.sig_block()
        ctx = Context()
        if self.accept("ctx"):
            ctx = self.ctx_block()
        self.expect("goal")
        self.expect("{")
        goal = self.formula()
        self.expect("}")
        proof: ProofTerm | None = None
        if require_proof or self.at("proof"):
            self.expect("proof")
            self.expect("{")
            proof = self.proof_term()
            self.expect("}")
        t = self.peek()
        if t.kind != "eof":
            self.fail(f"unexpected trailing input {t.text!r}")
        return ProofFile(system, self.sig, ctx, goal, proof)

    # -- model files -------------------------------------------------------

    def model_file(self):
        from .semantics import Model
        self.expect("model")
        self.expect("{")
        self.expect("domain")
        self.expect("{")
        domain: list[str] = []
        while not self.at("}"):
            domain.append(self.ident("domain element"))
            self.expect(";")
        self.expect("}")
        consts: dict[str, str] = {}
        funcs: dict[str, dict[tuple[str, ...], str]] = {}
        preds: dict[str, set[tuple[str, ...]]] = {}

        def element(tok_desc: str) -> str:
            name = self.ident(tok_desc)
            if name not in domain:
                self.fail(f"{name!r} is not a domain element")
            return name

        def tuple_of_elements() -> tuple[str, ...]:
            self.expect("(")
            items: list[str] = []
            if not self.at(")"):
                items.append(element("domain element"))
                while self.accept(","):
                    items.append(element("domain element"))
            self.expect(")")
            return tuple(items)

        while not self.at("}"):
            if self.accept("const"):
                name = self.ident("constant name")
                self.expect("=")
                consts[name] = element("domain element")
                self.expect(";")
            elif self.accept("fun"):
                name = self.ident("function name")
                table: dict[tuple[str, ...], str] = {}
                self.expect("{")
                while not self.at("}"):
                    key = tuple_of_elements()
                    self.expect("=")
                    table[key] = element("domain element")
                    self.expect(";")
                self.expect("}")
                funcs[name] = table
            elif self.accept("pred"):
                name = self.ident("predicate name")
                rows: set[tuple[str, ...]] = set()
                self.expect("{")
                while not self.at("}"):
                    rows.add(tuple_of_elements())
                    self.expect(";")
                self.expect("}")
                preds[name] = rows
            else:
                self.fail(f"expected a model declaration, found {self.peek().text!r}")
        self.expect("}")
        if self.peek().kind != "eof":
            self.fail("unexpected trailing input")
        return Model(tuple(domain), consts, funcs, preds)


def parse_file(text: str) -> ProofFile:
    return Parser(text).proof_file()


def parse_formula_file(text: str) -> ProofFile:
    """A proof file whose proof block is optional (for evaluation)."""
    return Parser(text).proof_file(require_proof=False)


def parse_model(text: str):
    return Parser(text).model_file()


def parse_formula(text: str, sig: Signature | None = None) -> Formula:
    p = Parser(text)
    p.sig = sig or Signature()
    f = p.formula()
    if p.peek().kind != "eof":
        p.fail("unexpected trailing input")
    return f


def parse_ind(text: str, sig: Signature | None = None) -> IndTerm:
    p = Parser(text)
    p.sig = sig or Signature()
    t = p.ind_term()
    if p.peek().kind != "eof":
        p.fail("unexpected trailing input")
    return t


def parse_proof(text: str, sig: Signature | None = None,
                ctx: Context | None = None) -> ProofTerm:
    p = Parser(text)
    p.sig = sig or Signature()
    if ctx is not None:
        for e in ctx.visible():
            match e.kind, e.formula:
                case (k, Forall(v, b)) if k == HYP_UNIV:
                    p.hyp_env[e.name] = ("hyp", v, b)
                case (k, Exists(v, b)) if k == HYP_WIT:
                    p.hyp_env[e.name] = ("wit", v, b)
    t = p.proof_term()
    if p.peek().kind != "eof":
        p.fail("unexpected trailing input")
    return t
