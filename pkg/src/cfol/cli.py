"""Batch command-line front end.

Every subcommand reads files or literal formulas, runs one pipeline and
prints a plain-text report (``--json`` for a machine-readable one).

Exit codes: 0 success/accepted, 1 refuted/no match/counter-model,
2 usage, parse or validation error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import henkin, kernel, prop, semantics
from .numerics import format_rational, parse_rational
from .parser import (
    ParseError, parse_formula, parse_proof, parse_signature, parse_structure,
    parse_theory, print_formula, print_proof, print_signature, print_structure,
    print_term, print_theory,
)
from .syntax import App, Signature, Var, is_formula

OK, REFUTED, USAGE = 0, 1, 2


class CliError(Exception):
    """Bad input: reported on stderr with exit code 2."""


Report = Tuple[int, str, dict]

# ------------------------------------------------------------- inputs


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}") from None


def _source(arg: str) -> Tuple[str, bool]:
    """Text of a file argument, or the argument itself when no such file exists."""
    if os.path.isfile(arg):
        return _read(arg), True
    return arg, False


def _sig(path: Optional[str]) -> Optional[Signature]:
    return parse_signature(_read(path)) if path else None


def _formula(arg: str, sig: Optional[Signature] = None):
    text, from_file = _source(arg)
    if from_file:
        fs = parse_theory(text, sig)
        if len(fs) != 1:
            raise CliError(f"{arg}: expected exactly one formula, found {len(fs)}")
        return fs[0]
    return parse_formula(text, sig)


def _theory(arg: str, sig: Optional[Signature] = None) -> list:
    """A .cfo file, or literal formulas separated by ';' (empty for '-')."""
    text, from_file = _source(arg)
    if from_file:
        return parse_theory(text, sig)
    if arg.strip() in ("", "-"):
        return []
    return [parse_formula(part, sig) for part in arg.split(";") if part.strip()]


def _structure(path: str, sig: Optional[Signature] = None, skeleton: bool = False):
    return parse_structure(_read(path), sig, skeleton=skeleton)


def _assignment(text: Optional[str]) -> Dict[str, str]:
    out: Dict[str, str] = {}
    if not text:
        return out
    for part in text.split(","):
        x, eq, a = part.partition("=")
        if not eq or not x.strip() or not a.strip():
            raise CliError(f"malformed assignment entry {part!r} (want x=a)")
        out[x.strip()] = a.strip()
    return out


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise CliError(f"cannot write {path}: {e.strerror}") from None

# ------------------------------------------------------------ reports


def _val(v: Dict[str, Fraction]) -> Dict[str, str]:
    return {k: format_rational(v[k]) for k in sorted(v)}


def _counter(res: prop.CounterModel) -> Report:
    line = f"COUNTER {prop.format_valuation(res.valuation)} value={format_rational(res.value)}"
    return REFUTED, line, {"result": "counter", "valuation": _val(res.valuation),
                           "value": format_rational(res.value)}


def _verdict_text(v: kernel.Verdict) -> Tuple[str, dict]:
    lines, steps = [], []
    for r in v.steps:
        f = print_formula(r.formula) if r.formula is not None else "?"
        status = "ok" if r.ok else "FAIL"
        extra = f"  ({r.reason})" if r.reason else ""
        lines.append(f"{r.index:>3} {status:<4} {r.rule:<8} {f}{extra}")
        steps.append({"index": r.index, "ok": r.ok, "rule": r.rule, "formula": f, "reason": r.reason})
    if v.accepted:
        lines.append(f"ACCEPTED {print_formula(v.conclusion)}")
    elif v.first_error is not None:
        lines.append(f"REJECTED at step {v.first_error.index}: {v.first_error.reason}")
    else:
        lines.append("REJECTED: empty proof")
    data = {"accepted": v.accepted, "steps": steps,
            "conclusion": print_formula(v.conclusion) if v.conclusion is not None else None}
    return "\n".join(lines), data


def _renamed(M: semantics.PreStructure, prefix: str = "t") -> Tuple[semantics.PreStructure, List[str]]:
    """Rename carrier elements to prefix0, prefix1, ... (term names contain
    parentheses, which the .struct format cannot carry)."""
    new = {a: f"{prefix}{i}" for i, a in enumerate(M.carrier)}
    funs = {f: {tuple(new[a] for a in k): new[v] for k, v in t.items()} for f, t in M.fun_tables.items()}
    rels = {r: {tuple(new[a] for a in k): v for k, v in t.items()} for r, t in M.rel_tables.items()}
    metric = None
    if M.metric is not None:
        metric = {(new[a], new[b]): v for (a, b), v in M.metric.items()}
    legend = [f"# {new[a]} = {a}" for a in M.carrier]
    return semantics.PreStructure(M.sig, [new[a] for a in M.carrier], funs, rels, metric), legend

# ----------------------------------------------------------- commands


def cmd_parse(a) -> Report:
    text, from_file = _source(a.input)
    kind = a.kind
    if kind == "auto":
        ext = os.path.splitext(a.input)[1] if from_file else ""
        kind = {".sig": "sig", ".struct": "struct", ".prf": "proof", ".cfo": "theory"}.get(ext, "formula")
        if kind == "formula" and from_file:
            kind = "theory"
    sig = _sig(a.sig)
    if kind == "formula":
        out = print_formula(parse_formula(text, sig)) + "\n"
    elif kind == "theory":
        out = print_theory(parse_theory(text, sig))
    elif kind == "sig":
        out = print_signature(parse_signature(text))
    elif kind == "struct":
        out = print_structure(parse_structure(text, sig))
    else:
        out = print_proof(parse_proof(text, sig))
    return OK, out.rstrip("\n"), {"kind": kind, "text": out}


def cmd_eval(a) -> Report:
    M = _structure(a.struct, _sig(a.sig))
    phi = _formula(a.formula, M.sig)
    env = _assignment(a.assign)
    try:
        sigma = semantics.Assignment.default_for(M, env)
    except ValueError as e:
        raise CliError(str(e)) from None
    v = semantics.eval(M, sigma, phi)
    return OK, f"VALUE {format_rational(v)}", {"value": format_rational(v)}


def cmd_validate(a) -> Report:
    M = _structure(a.struct, _sig(a.sig))
    rep = semantics.validate(M)
    data = {"ok": rep.ok, "violations": [{"kind": v.kind, "witnesses": list(v.witnesses)}
                                         for v in rep.violations]}
    return (OK if rep.ok else REFUTED), rep.text().rstrip("\n"), data


def cmd_quotient(a) -> Report:
    M = _structure(a.struct, _sig(a.sig))
    rep = semantics.validate(M)
    if not rep.ok:
        raise CliError("structure does not validate:\n" + rep.text().rstrip("\n"))
    N, h = semantics.quotient_completion(M)
    lines = [f"# h: {x} -> {h.mapping[x]}" for x in M.carrier]
    text = "\n".join(lines) + "\n" + print_structure(N)
    return OK, text.rstrip("\n"), {"structure": print_structure(N), "mapping": dict(h.mapping)}


def cmd_valid(a) -> Report:
    res = prop.decide_validity(_formula(a.formula), a.mode)
    if isinstance(res, prop.Valid):
        return OK, "VALID", {"result": "valid"}
    return _counter(res)


def cmd_sat(a) -> Report:
    res = prop.decide_satisfiability(_theory(a.theory), a.mode)
    if isinstance(res, prop.Unsat):
        return REFUTED, "UNSAT", {"result": "unsat"}
    return OK, f"MODEL {prop.format_valuation(res.valuation)}".rstrip(), {
        "result": "model", "valuation": _val(res.valuation)}


def cmd_consequence(a) -> Report:
    res = prop.decide_consequence(_theory(a.theory), _formula(a.formula), a.mode)
    if isinstance(res, prop.Holds):
        return OK, "HOLDS", {"result": "holds"}
    return _counter(res)


def cmd_degree(a) -> Report:
    res = prop.degree_of_truth(_theory(a.theory), _formula(a.formula), a.mode)
    if isinstance(res, prop.Unsat):
        return REFUTED, "UNSAT", {"result": "unsat"}
    return OK, f"DEGREE {format_rational(res)}", {"result": "degree", "degree": format_rational(res)}


def cmd_check(a) -> Report:
    sig = _sig(a.sig)
    proof = parse_proof(_read(a.proof), sig)
    v = kernel.check_proof(proof, a.mode, sig)
    text, data = _verdict_text(v)
    return (OK if v.accepted else REFUTED), text, data


def _load_proof(a):
    sig = _sig(a.sig)
    return sig, parse_proof(_read(a.proof), sig)


def cmd_deduce(a) -> Report:
    sig, proof = _load_proof(a)
    psi = _formula(a.hyp, sig)
    try:
        n, out = kernel.deduction_transform(proof, psi, sig)
    except ValueError as e:
        raise CliError(str(e)) from None
    text = f"# n = {n}\n" + print_proof(out)
    if a.out:
        _write(a.out, text)
    return OK, text.rstrip("\n"), {"n": n, "proof": print_proof(out)}


def cmd_generalize(a) -> Report:
    sig, proof = _load_proof(a)
    try:
        out = kernel.generalize_transform(proof, a.var, sig)
    except ValueError as e:
        raise CliError(str(e)) from None
    text = print_proof(out)
    if a.out:
        _write(a.out, text)
    return OK, text.rstrip("\n"), {"proof": text}


def _show(v) -> str:
    if is_formula(v):
        return print_formula(v)
    if isinstance(v, (Var, App)):
        return print_term(v)
    if isinstance(v, Fraction):
        return format_rational(v)
    return str(v)


def cmd_axiom(a) -> Report:
    sig = _sig(a.sig)
    m = kernel.match_axiom(_formula(a.formula, sig), sig)
    if m is None:
        return REFUTED, "NO MATCH", {"match": None}
    binds = {k: _show(v) for k, v in sorted(m.bindings.items())}
    lines = [f"AXIOM {m.schema}"]
    if m.prefix:
        lines.append("prefix " + " ".join(m.prefix))
    lines += [f"  {k} := {v}" for k, v in binds.items()]
    return OK, "\n".join(lines), {"match": m.schema, "prefix": list(m.prefix), "bindings": binds}


def _budget(items: Sequence[str]) -> List[Tuple[str, Fraction, Fraction]]:
    out = []
    for item in items:
        parts = item.split(":")
        if len(parts) != 3:
            raise CliError(f"malformed budget {item!r} (want x:p:q)")
        x, p, q = parts
        out.append((x.strip(), parse_rational(p), parse_rational(q)))
    return out


def cmd_henkin_expand(a) -> Report:
    sig = parse_signature(_read(a.sig))
    formulas = _theory(a.formulas, sig)
    try:
        new_sig, axioms = henkin.expand_level(sig, formulas, _budget(a.budget))
    except ValueError as e:
        raise CliError(str(e)) from None
    sig_text = print_signature(new_sig)
    ax_text = print_theory([ax.formula for ax in axioms])
    if a.out:
        _write(a.out + ".sig", sig_text)
        _write(a.out + ".cfo", ax_text)
    text = "# signature\n" + sig_text + "# axioms\n" + ax_text
    return OK, text.rstrip("\n"), {"signature": sig_text, "axioms": ax_text,
                                   "constants": [ax.constant.name for ax in axioms]}


def cmd_henkin_termmodel(a) -> Report:
    M = _structure(a.struct, _sig(a.sig))
    rep = semantics.validate(M)
    if not rep.ok:
        raise CliError("structure does not validate:\n" + rep.text().rstrip("\n"))
    named = {M.fun_tables[c][()] for c in M.sig.constants}
    if any(x not in named for x in M.carrier):
        M = henkin.name_elements(M)
    T = henkin.term_prestructure(henkin.TheoryOracle(M), M.sig, a.depth)
    if a.quotient:
        T, _ = semantics.quotient_completion(T)
    T, legend = _renamed(T)
    body = print_structure(T)
    if a.out:
        _write(a.out, body)
    text = "\n".join(legend) + "\n" + body
    return OK, text.rstrip("\n"), {"structure": body, "terms": [line[2:] for line in legend]}


def cmd_solve(a) -> Report:
    sig = parse_signature(_read(a.sig))
    skel = _structure(a.struct_skeleton, sig, skeleton=True)
    gamma = _theory(a.theory, sig)
    funs = None if a.enumerate_functions else skel.fun_tables
    missing = [f for f in sig.functions if f not in skel.fun_tables]
    if funs is not None and missing:
        raise CliError(f"skeleton lacks function tables for {missing} (or pass --enumerate-functions)")
    try:
        M = semantics.solve_predicates(sig, skel.carrier, funs, skel.metric, gamma,
                                       enumerate_functions=a.enumerate_functions,
                                       assignment=_assignment(a.assign) or None)
    except ValueError as e:
        raise CliError(str(e)) from None
    if M is None:
        return REFUTED, "UNSAT", {"result": "unsat"}
    body = print_structure(M)
    if a.out:
        _write(a.out, body)
    return OK, body.rstrip("\n"), {"result": "model", "structure": body}

# -------------------------------------------------------------- argv


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cfol", description="Continuous first-order logic toolkit.")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
        return sp

    sp = add("parse", cmd_parse, "parse a file or formula and print its canonical form")
    sp.add_argument("input")
    sp.add_argument("--kind", choices=["auto", "formula", "theory", "sig", "struct", "proof"], default="auto")
    sp.add_argument("--sig")

    sp = add("eval", cmd_eval, "evaluate a formula in a structure")
    sp.add_argument("formula")
    sp.add_argument("--struct", required=True)
    sp.add_argument("--assign", help="x=a,y=b (unlisted variables get the first element)")
    sp.add_argument("--sig")

    for name, fn, help_ in (("validate", cmd_validate, "check pseudo-metric and continuity conditions"),
                            ("quotient", cmd_quotient, "collapse distance-0 pairs")):
        sp = add(name, fn, help_)
        sp.add_argument("--struct", required=True)
        sp.add_argument("--sig")

    modes = ["continuous", "lukasiewicz"]
    sp = add("valid", cmd_valid, "propositional validity")
    sp.add_argument("formula")
    sp.add_argument("--mode", choices=modes, default="continuous")
    sp = add("sat", cmd_sat, "propositional satisfiability")
    sp.add_argument("theory")
    sp.add_argument("--mode", choices=modes, default="continuous")
    for name, fn, help_ in (("consequence", cmd_consequence, "propositional consequence"),
                            ("degree", cmd_degree, "degree of truth of a formula over a theory")):
        sp = add(name, fn, help_)
        sp.add_argument("theory")
        sp.add_argument("formula")
        sp.add_argument("--mode", choices=modes, default="continuous")

    sp = add("check", cmd_check, "check a proof")
    sp.add_argument("proof")
    sp.add_argument("--mode", choices=list(kernel.MODES), default="strict")
    sp.add_argument("--sig")

    sp = add("deduce", cmd_deduce, "discharge a hypothesis (deduction transform)")
    sp.add_argument("proof")
    sp.add_argument("--hyp", required=True)
    sp.add_argument("--sig")
    sp.add_argument("--out")

    sp = add("generalize", cmd_generalize, "prove the sup-generalization of a conclusion")
    sp.add_argument("proof")
    sp.add_argument("--var", required=True)
    sp.add_argument("--sig")
    sp.add_argument("--out")

    sp = add("axiom", cmd_axiom, "match a formula against the axiom schemas")
    sp.add_argument("formula")
    sp.add_argument("--sig")

    sp = add("henkin", None, "Henkin witnesses and term models")
    hs = sp.add_subparsers(dest="henkin_command", metavar="ACTION")
    hs.required = True
    ep = hs.add_parser("expand", help="one level of witness axioms")
    ep.set_defaults(fn=cmd_henkin_expand)
    ep.add_argument("--sig", required=True)
    ep.add_argument("--formulas", required=True)
    ep.add_argument("--budget", action="append", required=True, help="x:p:q, repeatable")
    ep.add_argument("--out", help="write OUT.sig and OUT.cfo")
    tp = hs.add_parser("termmodel", help="closed-term pre-structure of a structure's theory")
    tp.set_defaults(fn=cmd_henkin_termmodel)
    tp.add_argument("--struct", required=True)
    tp.add_argument("--depth", type=int, default=1)
    tp.add_argument("--quotient", action="store_true")
    tp.add_argument("--sig")
    tp.add_argument("--out")

    sp = add("solve", cmd_solve, "find relation tables satisfying a theory")
    sp.add_argument("theory")
    sp.add_argument("--struct-skeleton", required=True)
    sp.add_argument("--sig", required=True)
    sp.add_argument("--assign")
    sp.add_argument("--enumerate-functions", action="store_true")
    sp.add_argument("--out")
    return p


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code not in (0, None) else OK
    try:
        code, text, data = args.fn(args)
    except (CliError, ParseError, ValueError) as e:
        if args.json:
            print(json.dumps({"error": str(e)}, sort_keys=True), file=out)
        print(f"error: {e}", file=err)
        return USAGE
    if args.json:
        data = dict(data, exit=code)
        print(json.dumps(data, sort_keys=True), file=out)
    else:
        print(text, file=out)
    return code


def main() -> None:
    sys.exit(run())
