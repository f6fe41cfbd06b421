"""Command-line front end: check, normalize, extract, eval, corpus.

Exit codes: 0 success, 1 check or extraction failure, 2 parse error,
3 fuel exhausted.  `--json` reports are deterministic: no timestamps, files
sorted by path.
"""

from __future__ import annotations

import argparse
import importlib.resources
import json
import os
import sys
import time
from pathlib import Path

from .extract import (ExtractionError, FuelExhausted, NotHerbrandNormal,
                      extract_witnesses, herbrand_disjunction, is_hnf)
from .parser import ParseError, parse_file, parse_formula_file, parse_model
from .printer import format_formula, format_ind, format_proof
from .reduce import DEFAULT_FUEL, normalize
from .semantics import ModelError, eval_formula
from .syntax import Context, ExIntro, Inj, Lam, ILam, free_ind_vars
from .typecheck import CheckError, System, check, is_quasi_closed

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_FUEL = 3

FUEL_ENV_VAR = "HERBRAND_FUEL"


def default_fuel() -> int:
    raw = os.environ.get(FUEL_ENV_VAR)
    if raw is None:
        return DEFAULT_FUEL
    try:
        return int(raw)
    except ValueError:
        print(f"warning: ignoring non-numeric {FUEL_ENV_VAR}={raw!r}",
              file=sys.stderr)
        return DEFAULT_FUEL


def _resolve_system(args, pf) -> System:
    name = args.system or pf.system
    if name is None:
        raise SystemExit("error: no system given; use --system or a "
                         "`system ...;` directive in the file")
    return System(name)


def _load(path: str):
    try:
        text = Path(path).read_text()
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE_ERROR)
    try:
        return parse_file(text)
    except ParseError as e:
        print(f"{path}:{e}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE_ERROR)


def _error_payload(e: CheckError) -> dict:
    return {"code": e.code, "path": list(e.path), "message": e.message}


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(human)


# ---------------------------------------------------------------------------
# subcommands

def cmd_check(args) -> int:
    pf = _load(args.file)
    system = _resolve_system(args, pf)
    if pf.proof is None:
        print("error: file has no proof block", file=sys.stderr)
        return EXIT_PARSE_ERROR
    try:
        check(system, pf.signature, pf.context, pf.proof, pf.goal)
    except CheckError as e:
        _emit(args, {"ok": False, "error": _error_payload(e)},
              f"check failed: {e}")
        return EXIT_CHECK_FAILED
    _emit(args, {"ok": True}, f"ok: proof of {format_formula(pf.goal)}")
    return EXIT_OK


def cmd_normalize(args) -> int:
    pf = _load(args.file)
    system = _resolve_system(args, pf)
    if pf.proof is None:
        print("error: file has no proof block", file=sys.stderr)
        return EXIT_PARSE_ERROR
    try:
        check(system, pf.signature, pf.context, pf.proof, pf.goal)
    except CheckError as e:
        _emit(args, {"ok": False, "error": _error_payload(e)},
              f"check failed: {e}")
        return EXIT_CHECK_FAILED
    result = normalize(system, pf.signature, pf.proof, args.fuel)
    if args.trace and not args.json:
        for i, s in enumerate(result.trace):
            loc = ".".join(s.path) if s.path else "<root>"
            print(f"{i + 1} {s.rule} {loc} -> "
                  f"{format_proof(s.after, pf.context, pf.signature)}")
    printed = format_proof(result.term, pf.context, pf.signature)
    payload = {
        "ok": result.normal,
        "normal": result.normal,
        "steps": result.steps,
        "term": printed,
    }
    if args.trace:
        payload["trace"] = [
            {"rule": s.rule, "path": list(s.path)} for s in result.trace]
    if not result.normal:
        _emit(args, payload, f"fuel exhausted after {result.steps} steps")
        return EXIT_FUEL
    _emit(args, payload, f"normal after {result.steps} steps: {printed}")
    return EXIT_OK


def cmd_extract(args) -> int:
    pf = _load(args.file)
    system = _resolve_system(args, pf)
    if pf.proof is None:
        print("error: file has no proof block", file=sys.stderr)
        return EXIT_PARSE_ERROR
    try:
        result = extract_witnesses(system, pf.signature, pf.context, pf.proof,
                                   pf.goal, args.fuel)
    except CheckError as e:
        _emit(args, {"ok": False, "error": _error_payload(e)},
              f"check failed: {e}")
        return EXIT_CHECK_FAILED
    except FuelExhausted as e:
        _emit(args, {"ok": False, "error": {"code": "FuelExhausted",
                                            "message": str(e)}},
              f"fuel exhausted: {e}")
        return EXIT_FUEL
    except ExtractionError as e:
        _emit(args, {"ok": False, "error": {"code": type(e).__name__,
                                            "message": str(e)}},
              f"extraction failed: {e}")
        return EXIT_CHECK_FAILED
    witnesses = [format_ind(w) for w in result.witnesses]
    payload = {"ok": True, "witnesses": witnesses, "steps": len(result.trace)}
    if args.emit_disjunction:
        disjunction, proof = herbrand_disjunction(
            system, pf.signature, pf.context, result.hnf, pf.goal)
        out = render_file(system, pf, disjunction, proof)
        Path(args.emit_disjunction).write_text(out)
        payload["disjunction"] = format_formula(disjunction)
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for w in witnesses:
            print(w)
    return EXIT_OK


def cmd_eval(args) -> int:
    try:
        pf = parse_formula_file(Path(args.file).read_text())
        model = parse_model(Path(args.model).read_text())
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    try:
        value = eval_formula(model, {}, pf.goal)
    except ModelError as e:
        _emit(args, {"ok": False, "error": {"code": "ModelError",
                                            "message": str(e)}},
              f"evaluation failed: {e}")
        return EXIT_CHECK_FAILED
    _emit(args, {"ok": True, "value": value}, "true" if value else "false")
    return EXIT_OK


def corpus_dir() -> Path:
    return Path(str(importlib.resources.files("herbrand") / "corpus"))


def run_corpus_file(path: Path, fuel: int) -> dict:
    """Check, normalize and (when applicable) extract one corpus file."""
    entry: dict = {"path": path.name}
    started = time.monotonic()
    try:
        pf = parse_file(path.read_text())
    except ParseError as e:
        entry.update(ok=False, phase="parse", error=str(e))
        return entry
    if pf.system is None or pf.proof is None:
        entry.update(ok=False, phase="parse",
                     error="corpus files need system and proof")
        return entry
    system = System(pf.system)
    entry["system"] = system.value
    try:
        check(system, pf.signature, pf.context, pf.proof, pf.goal)
    except CheckError as e:
        entry.update(ok=False, phase="check", error=str(e))
        return entry
    result = normalize(system, pf.signature, pf.proof, fuel)
    entry["steps"] = result.steps
    if not result.normal:
        entry.update(ok=False, phase="normalize", error="fuel exhausted")
        return entry
    entry["normal_form"] = _nf_kind(result.term)
    entry["witnesses"] = None
    from .syntax import Exists
    if isinstance(pf.goal, Exists) and not free_ind_vars(pf.goal) \
            and is_quasi_closed(pf.proof):
        try:
            res = extract_witnesses(system, pf.signature, pf.context, pf.proof,
                                    pf.goal, fuel)
        except ExtractionError as e:
            entry.update(ok=False, phase="extract", error=str(e))
            return entry
        entry["witnesses"] = [format_ind(w) for w in res.witnesses]
    entry["ok"] = True
    entry["elapsed_ms"] = int((time.monotonic() - started) * 1000)
    return entry


def _nf_kind(t) -> str:
    if isinstance(t, ExIntro):
        return "ex-intro"
    if isinstance(t, Inj):
        return "injection"
    if is_hnf(t) is not None:
        return "hnf"
    if isinstance(t, (Lam, ILam)):
        return "lambda"
    return "other"


def cmd_corpus(args) -> int:
    base = Path(args.dir) if args.dir else corpus_dir()
    files = sorted(base.glob("*.pf"))
    if not files:
        print(f"error: no corpus files in {base}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    entries = [run_corpus_file(p, args.fuel) for p in files]
    ok = sum(1 for e in entries if e.get("ok"))
    aggregate = {"files": len(entries), "ok": ok, "failed": len(entries) - ok}
    if args.json:
        for e in entries:
            e.pop("elapsed_ms", None)
        print(json.dumps({"files": entries, "aggregate": aggregate},
                         indent=2, sort_keys=True))
    else:
        for e in entries:
            status = "ok" if e.get("ok") else f"FAILED ({e.get('phase')}: {e.get('error')})"
            extra = ""
            if e.get("ok"):
                extra = f" [{e.get('system')}, {e.get('steps')} steps, {e.get('normal_form')}"
                if e.get("witnesses") is not None:
                    extra += f", witnesses: {', '.join(e['witnesses'])}"
                extra += f", {e.get('elapsed_ms', 0)} ms]"
            print(f"{e['path']}: {status}{extra}")
        print(f"{aggregate['ok']}/{aggregate['files']} ok")
    return EXIT_OK if ok == len(entries) else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# emitting proof files

def render_file(system: System, pf, goal, proof) -> str:
    """A self-contained checkable proof file for the given goal and proof,
    reusing the source file's signature and context blocks."""
    from . import arith
    lines = [f"system {system.value};"]
    sig = pf.signature
    decls = []
    for c in sorted(sig.constants):
        decls.append(f"const {c};")
    for f, n in sorted(sig.functions.items()):
        decls.append(f"fun {f}/{n};")
    prelude = arith.prelude_signature() if system is System.HA_EM1 else None
    named = {fn: name for name, fn in prelude.prfuns.items()} if prelude else {}
    for name, fn in sig.prfuns.items():
        if prelude is not None and prelude.prfuns.get(name) == fn:
            continue
        decls.append(f"prfun {name}/{arith.arity(fn)} = {arith.format_pr(fn, named)};")
        named.setdefault(fn, name)
    done = set()
    for name, rel in sig.prrels.items():
        if name in done or (prelude is not None and name in prelude.prrels):
            continue
        if rel.polarity == "complement":
            continue
        decls.append(f"prrel {name}/{arith.arity(rel.fn)} = "
                     f"{arith.format_pr(rel.fn, named)} ~ {rel.complement};")
        done.add(rel.complement)
    for p in sorted(sig.predicates):
        if p in done or p in sig.prrels:
            continue
        comp = sig.complements.get(p)
        if comp is not None and comp in sig.predicates:
            decls.append(f"pred {p}/{sig.predicates[p]} ~ {comp}/{sig.predicates[comp]};")
            done.add(comp)
        else:
            decls.append(f"pred {p}/{sig.predicates[p]};")
        done.add(p)
    if decls:
        lines.append("sig {")
        lines.extend(f"  {d}" for d in decls)
        lines.append("}")
    if pf.context.entries:
        lines.append("ctx {")
        for e in pf.context.entries:
            tag = "hyp " if e.kind != "var" else ""
            lines.append(f"  {tag}{e.name} : {format_formula(e.formula)};")
        lines.append("}")
    lines.append(f"goal {{ {format_formula(goal)} }}")
    lines.append(f"proof {{ {format_proof(proof, pf.context, sig)} }}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument parsing

def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="herbrand",
        description="Proof checker, normalizer and witness extractor for "
                    "intuitionistic logic with restricted excluded middle.")
    sub = ap.add_subparsers(dest="command", required=True)
    systems = [s.value for s in System]

    def common(p, with_fuel: bool = True):
        p.add_argument("--json", action="store_true",
                       help="machine-readable output")
        if with_fuel:
            p.add_argument("--fuel", type=int, default=default_fuel(),
                           help="maximum number of reduction steps")

    p = sub.add_parser("check", help="type-check a proof file")
    p.add_argument("file")
    p.add_argument("--system", choices=systems)
    common(p, with_fuel=False)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("normalize", help="reduce a proof to normal form")
    p.add_argument("file")
    p.add_argument("--system", choices=systems)
    p.add_argument("--trace", action="store_true",
                   help="print one line per reduction step")
    common(p)
    p.set_defaults(fn=cmd_normalize)

    p = sub.add_parser("extract", help="extract witnesses from an existential proof")
    p.add_argument("file")
    p.add_argument("--system", choices=systems)
    p.add_argument("--emit-disjunction", metavar="OUT",
                   help="write the Herbrand disjunction proof to OUT")
    common(p)
    p.set_defaults(fn=cmd_extract)

    p = sub.add_parser("eval", help="evaluate a formula in a finite model")
    p.add_argument("file", help="file with a goal block")
    p.add_argument("--model", required=True)
    common(p, with_fuel=False)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("corpus", help="run check+normalize+extract over the corpus")
    p.add_argument("--dir", help="corpus directory (default: bundled)")
    common(p)
    p.set_defaults(fn=cmd_corpus)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
