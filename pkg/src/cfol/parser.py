"""Concrete ASCII syntax for formulas, signatures, structures, theories and proofs.

Formula grammar::

    formula := unary { binop unary }          (left-associative)
    binop   := "-." | "-."<int> | "/\\" | "\\/" | "+."
    unary   := "neg" unary | "half" unary | "sup" var "." unary
             | "inf" var "." unary | atom
    atom    := ident "(" term {"," term} ")" | ident | "d" "(" term "," term ")"
             | "#" dyadic | "(" formula ")" | "|" formula "-" formula "|"
    dyadic  := int "/" "2^" int | "0" | "1"

Derived forms are expanded while parsing, so the result is always a core
formula.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .numerics import Dyadic, Modulus, format_rational, parse_rational
from .syntax import (
    METRIC, App, Atom, Const, Formula, Half, Metric, Monus, Neg, Signature,
    Sup, Symbol, Term, Var, absdiff, dotplus, inf, monus_n, vee, wedge,
)


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int
    line: int
    column: int

    def __str__(self):
        return f"{self.line}:{self.column}"


class ParseError(ValueError):
    def __init__(self, message: str, span: Optional[SourceSpan] = None):
        self.message = message
        self.span = span
        super().__init__(f"{span}: {message}" if span else message)


def _span(text: str, start: int, end: int, line_offset: int = 0) -> SourceSpan:
    line = text.count("\n", 0, start) + 1 + line_offset
    col = start - (text.rfind("\n", 0, start) + 1) + 1
    return SourceSpan(start, end, line, col)

# ---------------------------------------------------------------- lexer


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<dyadic>\#\s*\d+(?:\s*/\s*2\s*\^\s*\d+)?)
  | (?P<monus>-\.\d*)
  | (?P<wedge>/\\)
  | (?P<vee>\\/)
  | (?P<plus>\+\.)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[(),.|-])
""", re.VERBOSE)


@dataclass
class _Tok:
    kind: str
    text: str
    start: int
    end: int


def _lex(text: str) -> List[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", _span(text, pos, pos + 1))
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group(kind)
            out.append(_Tok(tok if kind == "punct" else kind, tok, m.start(), m.end()))
        pos = m.end()
    out.append(_Tok("eof", "", len(text), len(text)))
    return out


_KEYWORDS = {"neg", "half", "sup", "inf"}
_DYADIC_RE = re.compile(r"#\s*(\d+)(?:\s*/\s*2\s*\^\s*(\d+))?")


def _dyadic_of(tok: str) -> Dyadic:
    m = _DYADIC_RE.fullmatch(tok)
    k = int(m.group(1))
    if m.group(2) is None:
        if k not in (0, 1):
            raise ValueError("bare numerals must be #0 or #1")
        return Dyadic(k, 0)
    return Dyadic(k, int(m.group(2)))


class _Parser:
    def __init__(self, text: str, sig: Optional[Signature], line_offset: int = 0):
        self.text = text
        self.toks = _lex(text)
        self.i = 0
        self.sig = sig
        self.line_offset = line_offset
        # arities discovered when no signature is supplied
        self.rel_arity: Dict[str, int] = {}
        self.fun_arity: Dict[str, int] = {}
        self.uses_metric = False

    def err(self, msg: str, tok: Optional[_Tok] = None) -> ParseError:
        tok = tok or self.toks[self.i]
        return ParseError(msg, _span(self.text, tok.start, max(tok.end, tok.start + 1), self.line_offset))

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: Optional[str] = None) -> _Tok:
        tok = self.tok
        if kind is not None and tok.kind != kind:
            want = {"eof": "end of input"}.get(kind, repr(kind))
            got = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise self.err(f"expected {want}, found {got}")
        self.i += 1
        return tok

    # formulas

    def formula(self) -> Formula:
        left = self.unary()
        while self.tok.kind in ("monus", "wedge", "vee", "plus"):
            op = self.take()
            right = self.unary()
            if op.kind == "monus":
                n = int(op.text[2:]) if len(op.text) > 2 else 1
                left = monus_n(left, n, right)
            elif op.kind == "wedge":
                left = wedge(left, right)
            elif op.kind == "vee":
                left = vee(left, right)
            else:
                left = dotplus(left, right)
        return left

    def unary(self) -> Formula:
        tok = self.tok
        if tok.kind == "ident" and tok.text in _KEYWORDS:
            self.take()
            if tok.text == "neg":
                return Neg(self.unary())
            if tok.text == "half":
                return Half(self.unary())
            var = self.take("ident")
            if var.text in _KEYWORDS:
                raise self.err("keyword used as a variable", var)
            self.take(".")
            body = self.unary()
            return Sup(var.text, body) if tok.text == "sup" else inf(var.text, body)
        return self.atom()

    def atom(self) -> Formula:
        tok = self.tok
        if tok.kind == "dyadic":
            self.take()
            try:
                return Const(_dyadic_of(tok.text))
            except ValueError as e:
                raise self.err(str(e), tok) from None
        if tok.kind == "(":
            self.take()
            phi = self.formula()
            self.take(")")
            return phi
        if tok.kind == "|":
            self.take()
            left = self.formula()
            self.take("-")
            right = self.formula()
            self.take("|")
            return absdiff(left, right)
        if tok.kind != "ident":
            got = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise self.err(f"expected a formula, found {got}")
        self.take()
        name = tok.text
        args: Tuple[Term, ...] = ()
        if self.tok.kind == "(":
            args = self.term_args()
        if name == METRIC:
            if len(args) != 2:
                raise self.err("the metric d takes exactly two arguments", tok)
            if self.sig is not None and not self.sig.has_metric:
                raise self.err("metric used in a signature without d", tok)
            self.uses_metric = True
            return Metric(args[0], args[1])
        self.check_relation(name, len(args), tok)
        return Atom(name, args)

    def check_relation(self, name: str, arity: int, tok: _Tok) -> None:
        if self.sig is None:
            if name in self.fun_arity:
                raise self.err(f"{name!r} already used as a function symbol", tok)
            prev = self.rel_arity.setdefault(name, arity)
            if prev != arity:
                raise self.err(f"arity mismatch for {name}: {arity} vs {prev}", tok)
            return
        sym = self.sig.relations.get(name)
        if sym is None:
            raise self.err(f"unknown relation symbol {name!r}", tok)
        if sym.arity != arity:
            raise self.err(f"arity mismatch: {name} expects {sym.arity} arguments, got {arity}", tok)

    # terms

    def term_args(self) -> Tuple[Term, ...]:
        self.take("(")
        if self.tok.kind == ")":
            self.take()
            return ()
        args = [self.term()]
        while self.tok.kind == ",":
            self.take()
            args.append(self.term())
        self.take(")")
        return tuple(args)

    def term(self) -> Term:
        tok = self.take("ident")
        name = tok.text
        if name in _KEYWORDS:
            raise self.err("keyword used as a term", tok)
        if self.tok.kind == "(":
            args = self.term_args()
            self.check_function(name, len(args), tok)
            return App(name, args)
        if self.sig is not None:
            sym = self.sig.functions.get(name)
            if sym is not None:
                if sym.arity != 0:
                    raise self.err(f"arity mismatch: {name} expects {sym.arity} arguments, got 0", tok)
                return App(name, ())
        return Var(name)

    def check_function(self, name: str, arity: int, tok: _Tok) -> None:
        if self.sig is None:
            if name in self.rel_arity:
                raise self.err(f"{name!r} already used as a relation symbol", tok)
            prev = self.fun_arity.setdefault(name, arity)
            if prev != arity:
                raise self.err(f"arity mismatch for {name}: {arity} vs {prev}", tok)
            return
        sym = self.sig.functions.get(name)
        if sym is None:
            raise self.err(f"unknown function symbol {name!r}", tok)
        if sym.arity != arity:
            raise self.err(f"arity mismatch: {name} expects {sym.arity} arguments, got {arity}", tok)

    def inferred_signature(self) -> Signature:
        rels = {k: Symbol(a) for k, a in self.rel_arity.items()}
        if not rels and not self.uses_metric:
            rels = {"P": Symbol(0)}
        return Signature(rels, {k: Symbol(a) for k, a in self.fun_arity.items()}, self.uses_metric)


def parse_formula(text: str, sig: Optional[Signature] = None) -> Formula:
    """Parse one formula.  Without a signature, symbols are accepted as used."""
    p = _Parser(text, sig)
    phi = p.formula()
    p.take("eof")
    return phi


def parse_term(text: str, sig: Optional[Signature] = None) -> Term:
    p = _Parser(text, sig)
    t = p.term()
    p.take("eof")
    return t


def infer_signature(texts: List[str]) -> Signature:
    """Signature implied by the symbols used in some formula texts."""
    rels: Dict[str, int] = {}
    funs: Dict[str, int] = {}
    metric = False
    for text in texts:
        p = _Parser(text, None)
        p.rel_arity, p.fun_arity = rels, funs
        p.formula()
        p.take("eof")
        metric = metric or p.uses_metric
    if not rels and not metric:
        rels = {"P": 0}
    return Signature({k: Symbol(a) for k, a in rels.items()},
                     {k: Symbol(a) for k, a in funs.items()}, metric)

# -------------------------------------------------------------- printing


def print_term(t: Term) -> str:
    return str(t)


def print_formula(phi: Formula) -> str:
    if isinstance(phi, Atom):
        if not phi.args:
            return phi.pred
        return f"{phi.pred}({','.join(map(print_term, phi.args))})"
    if isinstance(phi, Metric):
        return f"d({print_term(phi.left)},{print_term(phi.right)})"
    if isinstance(phi, Const):
        v = phi.value
        if v.n == 0:
            return f"#{v.k}"
        return f"#{v.k}/2^{v.n}"
    if isinstance(phi, Monus):
        return f"({print_formula(phi.left)} -. {print_formula(phi.right)})"
    if isinstance(phi, Neg):
        return f"neg {print_formula(phi.body)}"
    if isinstance(phi, Half):
        return f"half {print_formula(phi.body)}"
    if isinstance(phi, Sup):
        return f"sup {phi.var} . {print_formula(phi.body)}"
    raise TypeError(f"not a core formula: {phi!r}")

# ------------------------------------------------------------ theories


def is_comment(line: str) -> bool:
    s = line.strip()
    return not s or (s.startswith("#") and not s[1:2].isdigit())


def parse_theory(text: str, sig: Optional[Signature] = None) -> List[Formula]:
    """One formula per line; blank lines and ``#`` comments are skipped."""
    out = []
    for lineno, line in enumerate(text.split("\n")):
        if is_comment(line):
            continue
        p = _Parser(line, sig, line_offset=lineno)
        out.append(p.formula())
        p.take("eof")
    return out


def theory_signature(text: str) -> Signature:
    return infer_signature([line for line in text.split("\n") if not is_comment(line)])


def print_theory(formulas) -> str:
    return "".join(print_formula(f) + "\n" for f in formulas)

# ---------------------------------------------------------- signatures


_MODULUS_RE = re.compile(r"modulus\s*\[([^\]]*)\]")
_PAIR_RE = re.compile(r"\(\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)")


def parse_modulus(text: str) -> Modulus:
    m = _MODULUS_RE.fullmatch(text.strip())
    if not m:
        raise ValueError(f"not a modulus: {text!r}")
    inner = m.group(1)
    pairs = _PAIR_RE.findall(inner)
    if _PAIR_RE.sub("", inner).replace(",", "").strip():
        raise ValueError(f"malformed modulus breakpoints: {inner!r}")
    return Modulus([(parse_rational(e), parse_rational(d)) for e, d in pairs])


def parse_signature(text: str) -> Signature:
    """``.sig`` format, one declaration per line::

        metric [modulus [...] modulus [...]]
        rel P/2 [modulus [(e,d),...]] ...
        fun f/1 [modulus [...]]
        const c
    """
    rels: Dict[str, Symbol] = {}
    funs: Dict[str, Symbol] = {}
    metric = False
    lines = text.split("\n")
    for lineno, raw in enumerate(lines):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        where = SourceSpan(0, 0, lineno + 1, 1)
        head, _, rest = line.partition(" ")
        try:
            moduli = tuple(parse_modulus(m.group(0)) for m in _MODULUS_RE.finditer(rest))
            leftover = _MODULUS_RE.sub("", rest).strip()
            if head == "metric":
                if leftover:
                    raise ValueError(f"unexpected {leftover!r}")
                metric = True
                rels[METRIC] = Symbol(2, moduli)
            elif head in ("rel", "fun"):
                m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_']*)\s*/\s*(\d+)", leftover)
                if not m:
                    raise ValueError(f"expected NAME/ARITY, found {leftover!r}")
                name, arity = m.group(1), int(m.group(2))
                table = rels if head == "rel" else funs
                if name in rels or name in funs:
                    raise ValueError(f"duplicate symbol {name!r}")
                table[name] = Symbol(arity, moduli)
            elif head == "const":
                if moduli or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", leftover):
                    raise ValueError(f"expected a constant name, found {leftover!r}")
                funs[leftover] = Symbol(0)
            else:
                raise ValueError(f"unknown declaration {head!r}")
        except ValueError as e:
            raise ParseError(str(e), where) from None
    try:
        return Signature(rels, funs, metric)
    except ValueError as e:
        raise ParseError(str(e)) from None


def print_signature(sig: Signature) -> str:
    out = []
    ident = Modulus.identity()

    def mods(sym: Symbol) -> str:
        if all(m == ident for m in sym.moduli):
            return ""
        return "".join(f" {m}" for m in sym.moduli)

    if sig.has_metric:
        out.append("metric" + mods(sig.relations[METRIC]))
    for r in sig.relation_names():
        out.append(f"rel {r}/{sig.relations[r].arity}{mods(sig.relations[r])}")
    for f in sorted(sig.functions):
        sym = sig.functions[f]
        if sym.arity == 0:
            out.append(f"const {f}")
        else:
            out.append(f"fun {f}/{sym.arity}{mods(sym)}")
    return "".join(line + "\n" for line in out)

# ----------------------------------------------------------- structures


_ENTRY_RE = re.compile(r"\(([^()]*)\)\s*(=|->)\s*([^\s()]+)")


def _entries(rest: str, arrow: str, where: SourceSpan):
    leftover = _ENTRY_RE.sub("", rest).strip()
    if leftover:
        raise ParseError(f"malformed table entries near {leftover!r}", where)
    for m in _ENTRY_RE.finditer(rest):
        if m.group(2) != arrow:
            raise ParseError(f"expected {arrow!r} in table entry", where)
        args = tuple(a.strip() for a in m.group(1).split(",")) if m.group(1).strip() else ()
        yield args, m.group(3)


def parse_structure(text: str, sig: Optional[Signature] = None, skeleton: bool = False):
    """``.struct`` format::

        carrier a b c
        fun f: (a)->b (b)->a ...
        rel P: (a)=1/3 (b)=3/4 ...
        metric: (a,b)=1/2 ...

    Metric tables may be sparse: mirrored entries and the zero diagonal are
    filled in.  Without a signature one is inferred from the tables.

    With ``skeleton`` the relation tables are ignored, function tables may be
    left out entirely (partial ones are still errors) and a missing metric
    stays None; this is the input shape of solve_predicates.
    """
    from .semantics import PreStructure

    carrier: Optional[List[str]] = None
    funs: Dict[str, Dict[tuple, str]] = {}
    rels: Dict[str, Dict[tuple, Fraction]] = {}
    metric: Optional[Dict[tuple, Fraction]] = None
    spans: Dict[str, SourceSpan] = {}
    for lineno, raw in enumerate(text.split("\n")):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        where = SourceSpan(0, 0, lineno + 1, 1)
        head, _, rest = line.partition(" ")
        if head == "carrier":
            if carrier is not None:
                raise ParseError("carrier declared twice", where)
            carrier = rest.split()
            if not carrier:
                raise ParseError("carrier must be non-empty", where)
            if len(set(carrier)) != len(carrier):
                raise ParseError("duplicate carrier element", where)
            continue
        if carrier is None:
            raise ParseError("carrier must be declared first", where)
        known = set(carrier)
        if head in ("fun", "rel"):
            name, colon, body = rest.partition(":")
            name = name.strip()
            if not colon or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", name):
                raise ParseError(f"expected '{head} NAME: entries'", where)
            spans.setdefault(name, where)
            if head == "fun":
                table = funs.setdefault(name, {})
                for args, val in _entries(body, "->", where):
                    for a in args + (val,):
                        if a not in known:
                            raise ParseError(f"unknown element {a!r}", where)
                    table[args] = val
            else:
                rtable = rels.setdefault(name, {})
                for args, val in _entries(body, "=", where):
                    for a in args:
                        if a not in known:
                            raise ParseError(f"unknown element {a!r}", where)
                    rtable[args] = _unit_value(val, where)
        elif head == "metric:" or (head == "metric" and rest.startswith(":")):
            body = rest[1:] if head == "metric" else rest
            metric = metric if metric is not None else {}
            for args, val in _entries(body, "=", where):
                if len(args) != 2:
                    raise ParseError("metric entries take two elements", where)
                for a in args:
                    if a not in known:
                        raise ParseError(f"unknown element {a!r}", where)
                metric[args] = _unit_value(val, where)
        else:
            raise ParseError(f"unknown structure line {head!r}", where)
    if carrier is None:
        raise ParseError("missing carrier line")

    if sig is None:
        sig = _structure_signature(funs, rels, metric is not None)
    for name in list(funs) + list(rels):
        if name not in sig.functions and name not in sig.relations:
            raise ParseError(f"unknown symbol {name!r}", spans.get(name))
    if metric is None and sig.has_metric and not skeleton:
        metric = {}
    if metric is not None:
        if not sig.has_metric:
            raise ParseError("metric table given but the signature has no metric")
        metric = _complete_metric(carrier, metric)
    for f, sym in sig.functions.items():
        table = funs.get(f, {})
        if skeleton and f not in funs:
            continue
        for args in itertools.product(carrier, repeat=sym.arity):
            if args not in table:
                raise ParseError(f"missing table entry {f}({','.join(args)})", spans.get(f))
        if any(len(a) != sym.arity for a in table):
            raise ParseError(f"arity mismatch in table for {f}", spans.get(f))
    for r, sym in sig.relations.items():
        if r == METRIC or skeleton:
            continue
        table = rels.get(r, {})
        for args in itertools.product(carrier, repeat=sym.arity):
            if args not in table:
                raise ParseError(f"missing table entry {r}({','.join(args)})", spans.get(r))
        if any(len(a) != sym.arity for a in table):
            raise ParseError(f"arity mismatch in table for {r}", spans.get(r))
    return PreStructure(sig, tuple(carrier), funs, rels, metric)


def _unit_value(text: str, where: SourceSpan) -> Fraction:
    try:
        v = parse_rational(text)
    except ValueError as e:
        raise ParseError(str(e), where) from None
    if not 0 <= v <= 1:
        raise ParseError(f"value {text} outside [0,1]", where)
    return v


def _complete_metric(carrier, given):
    out = {}
    for a in carrier:
        for b in carrier:
            if (a, b) in given:
                out[(a, b)] = given[(a, b)]
            elif (b, a) in given:
                out[(a, b)] = given[(b, a)]
            elif a == b:
                out[(a, b)] = Fraction(0)
            else:
                raise ParseError(f"missing metric entry ({a},{b})")
    return out


def _structure_signature(funs, rels, has_metric) -> Signature:
    def arity(table, name):
        ar = {len(k) for k in table}
        if len(ar) > 1:
            raise ParseError(f"inconsistent arities in table for {name}")
        return ar.pop() if ar else 0

    fsyms = {f: Symbol(arity(t, f)) for f, t in funs.items()}
    rsyms = {r: Symbol(arity(t, r)) for r, t in rels.items()}
    try:
        return Signature(rsyms, fsyms, has_metric)
    except ValueError as e:
        raise ParseError(str(e)) from None


def print_structure(M) -> str:
    out = ["carrier " + " ".join(M.carrier)]
    for f in sorted(M.fun_tables):
        entries = " ".join(f"({','.join(k)})->{v}" for k, v in sorted(M.fun_tables[f].items(), key=lambda kv: _order(M, kv[0])))
        out.append(f"fun {f}: {entries}")
    for r in sorted(M.rel_tables):
        entries = " ".join(f"({','.join(k)})={format_rational(v)}" for k, v in sorted(M.rel_tables[r].items(), key=lambda kv: _order(M, kv[0])))
        out.append(f"rel {r}: {entries}")
    if M.metric is not None:
        entries = " ".join(f"({a},{b})={format_rational(M.metric[(a, b)])}"
                           for i, a in enumerate(M.carrier) for b in M.carrier[i + 1:])
        out.append(f"metric: {entries}".rstrip())
    return "".join(line + "\n" for line in out)


def _order(M, key):
    idx = M.index
    return tuple(idx[k] for k in key)

# -------------------------------------------------------------- proofs


def parse_proof(text: str, sig: Optional[Signature] = None):
    """``.prf`` format, one item per line (steps numbered from 0)::

        given <formula>          declares the next hypothesis
        hyp <k>
        ax <formula>
        mp <i> <j>               step j must be (X -. step i); concludes X
        taut [<i,...,j> | -] <formula>
    """
    from .kernel import MP, Ax, Hyp, Proof, Taut

    hyps: List[Formula] = []
    steps = []
    for lineno, raw in enumerate(text.split("\n")):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        where = SourceSpan(0, 0, lineno + 1, 1)
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        k = len(steps)
        # column offset of ``rest`` inside the raw line, for formula spans
        offset = raw.find(rest) if rest else 0

        def formula(src: str, shift: int = 0) -> Formula:
            try:
                p = _Parser(src, sig, line_offset=lineno)
                phi = p.formula()
                p.take("eof")
            except ParseError as e:
                sp = e.span
                if sp is not None:
                    sp = SourceSpan(sp.start, sp.end, lineno + 1, sp.column + offset + shift)
                raise ParseError(e.message, sp) from None
            return phi

        if head == "given":
            hyps.append(formula(rest))
        elif head == "hyp":
            if not re.fullmatch(r"\d+", rest):
                raise ParseError("hyp expects a hypothesis index", where)
            steps.append(Hyp(int(rest)))
        elif head == "ax":
            steps.append(Ax(formula(rest)))
        elif head == "mp":
            m = re.fullmatch(r"(\d+)\s+(\d+)", rest)
            if not m:
                raise ParseError("mp expects two step indices", where)
            i, j = int(m.group(1)), int(m.group(2))
            for ref in (i, j):
                if ref >= k:
                    raise ParseError(f"step {k} refers forward to step {ref}", where)
            steps.append(MP(i, j))
        elif head == "taut":
            m = re.match(r"(\d+(?:\s*,\s*\d+)*|-)\s+", rest)
            prem: Tuple[int, ...] = ()
            shift = 0
            if m:
                if m.group(1) != "-":
                    prem = tuple(int(x) for x in m.group(1).split(","))
                shift = m.end()
            for ref in prem:
                if ref >= k:
                    raise ParseError(f"step {k} refers forward to step {ref}", where)
            steps.append(Taut(prem, formula(rest[shift:], shift)))
        else:
            raise ParseError(f"malformed proof step {head!r}", where)
    for s in steps:
        if isinstance(s, Hyp) and s.index >= len(hyps):
            raise ParseError(f"hyp {s.index} names an undeclared hypothesis")
    return Proof(tuple(hyps), tuple(steps))


def print_proof(proof) -> str:
    from .kernel import MP, Ax, Hyp, Taut

    out = [f"given {print_formula(h)}" for h in proof.hypotheses]
    for s in proof.steps:
        if isinstance(s, Hyp):
            out.append(f"hyp {s.index}")
        elif isinstance(s, Ax):
            out.append(f"ax {print_formula(s.formula)}")
        elif isinstance(s, MP):
            out.append(f"mp {s.minor} {s.major}")
        elif isinstance(s, Taut):
            prem = ",".join(map(str, s.premises)) if s.premises else "-"
            out.append(f"taut {prem} {print_formula(s.formula)}")
    return "".join(line + "\n" for line in out)
