"""Henkin witnesses and finite slices of the term model."""

from __future__ import annotations

import hashlib
import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .numerics import Dyadic
from .parser import print_formula
from .semantics import Assignment, PreStructure, eval as eval_formula
from .subst import subst_free
from .syntax import (
    App, Const, Formula, Metric, Monus, Atom, Neg, Signature, Sup, Term,
    constants_in, is_sentence, wedge,
)

_WITNESS_RE = re.compile(r"^c(\d+)_[0-9a-f]{10}$")


@dataclass(frozen=True)
class WitnessConstant:
    name: str
    phi: Formula
    x: str
    p: Dyadic
    q: Dyadic
    level: int


@dataclass(frozen=True)
class HenkinAxiom:
    formula: Formula
    constant: WitnessConstant

    @property
    def level(self) -> int:
        return self.constant.level


def witness_level(name: str) -> int:
    """Expansion level of a witness constant name (0 for ordinary constants)."""
    m = _WITNESS_RE.match(name)
    return int(m.group(1)) if m else 0


def witness_name(phi: Formula, x: str, p: Dyadic, q: Dyadic) -> Tuple[str, int]:
    level = 1 + max((witness_level(c) for c in constants_in(phi)), default=0)
    key = f"{print_formula(phi)}|{x}|{p}|{q}".encode()
    return f"c{level}_{hashlib.sha1(key).hexdigest()[:10]}", level


def henkin_axiom(phi: Formula, x: str, p, q) -> Tuple[HenkinAxiom, WitnessConstant]:
    """(sup x phi -. q) /\\ (p -. phi[c/x]) with c the witness for (phi,x,p,q)."""
    p, q = Dyadic.of(p), Dyadic.of(q)
    if not p < q:
        raise ValueError(f"need p < q, got p={p}, q={q}")
    name, level = witness_name(phi, x, p, q)
    c = WitnessConstant(name, phi, x, p, q, level)
    inst = subst_free(phi, App(name, ()), x)
    assert inst.correct
    formula = wedge(Monus(Sup(x, phi), Const(q)), Monus(Const(p), inst.formula))
    ax = HenkinAxiom(formula, c)
    return ax, c


def expand_level(sig: Signature, formulas: Sequence[Formula],
                 budget: Sequence[Tuple[str, object, object]]) -> Tuple[Signature, List[HenkinAxiom]]:
    """One stratum of witnesses: an axiom for every formula and budget triple
    (x, p, q).  Repeated requests give the same constant."""
    seen: Dict[str, HenkinAxiom] = {}
    for phi in formulas:
        sig.check_formula(phi)
        for x, p, q in budget:
            ax, c = henkin_axiom(phi, x, p, q)
            seen.setdefault(c.name, ax)
    axioms = list(seen.values())
    return sig.with_constants(a.constant.name for a in axioms), axioms


def _extend_sig(sig: Signature, names: Iterable[str]) -> Signature:
    return sig.with_constants(names)


def witness_model_extension(M: PreStructure, axioms: Sequence[HenkinAxiom]) -> PreStructure:
    """Interpret each witness constant at the least element maximizing its
    formula (under the default assignment), lower levels first."""
    funs = {f: dict(t) for f, t in M.fun_tables.items()}
    sig = M.sig
    cur = M
    for ax in sorted(axioms, key=lambda a: a.level):
        c = ax.constant
        if c.name in funs:
            continue
        best, arg = None, None
        base = Assignment.default_for(cur)
        for a in cur.carrier:
            v = eval_formula(cur, base.updated(c.x, a), c.phi)
            if best is None or v > best:
                best, arg = v, a
        funs[c.name] = {(): arg}
        sig = _extend_sig(sig, [c.name])
        cur = PreStructure(sig, M.carrier, funs, M.rel_tables, M.metric)
    return cur


def element_constant(a: str) -> str:
    return f"c_{a}"


def name_elements(M: PreStructure) -> PreStructure:
    """Add a constant ``c_<a>`` denoting each element a."""
    names = [element_constant(a) for a in M.carrier]
    sig = M.sig.with_constants(names)
    funs = {f: dict(t) for f, t in M.fun_tables.items()}
    for a, n in zip(M.carrier, names):
        funs[n] = {(): a}
    return PreStructure(sig, M.carrier, funs, M.rel_tables, M.metric)


class TheoryOracle:
    """The complete theory of a finite structure whose elements are all named.

    A sentence is in the theory iff it evaluates to 0; bound queries are
    answered from the exact value.
    """

    def __init__(self, M: PreStructure):
        named = {M.fun_tables[c][()] for c in M.sig.constants}
        missing = [a for a in M.carrier if a not in named]
        if missing:
            raise ValueError(f"elements without a naming constant: {missing}")
        self.M = M
        self.sig = M.sig
        self._names = {}
        for c in M.sig.constants:
            self._names.setdefault(M.fun_tables[c][()], c)

    def _value(self, phi: Formula) -> Fraction:
        if not is_sentence(phi):
            raise ValueError("oracle queries take sentences")
        self.sig.check_formula(phi)
        return eval_formula(self.M, None, phi)

    def contains(self, phi: Formula) -> bool:
        return self._value(phi) == 0

    def sup_lower(self, phi: Formula) -> Fraction:
        """sup{p dyadic : p -. phi in the theory}.

        p -. phi is in the theory iff p <= value(phi), and the dyadics are
        dense, so the sup is that value.
        """
        return self._value(phi)

    def inf_upper(self, phi: Formula) -> Fraction:
        """inf{q dyadic : phi -. q in the theory}, computed through neg phi:
        phi -. q vanishes iff (1-q) -. neg phi does."""
        return 1 - self._value(Neg(phi))

    def denotation(self, t: Term) -> str:
        from .semantics import eval_term
        return eval_term(self.M, None, t)

    def name_of(self, t: Term) -> str:
        """Least naming constant (in signature order) of the element t denotes."""
        return self._names[self.denotation(t)]


def closed_terms(sig: Signature, depth: int) -> List[Term]:
    """All closed terms of depth <= depth, shallow first, then by printed form."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    layers: List[List[Term]] = [[App(c, ()) for c in sig.constants]]
    everything = list(layers[0])
    for k in range(1, depth + 1):
        new = []
        for f in sorted(sig.functions):
            n = sig.functions[f].arity
            if n == 0:
                continue
            for args in itertools.product(everything, repeat=n):
                if any(_depth(a) == k - 1 for a in args):
                    new.append(App(f, tuple(args)))
        new.sort(key=str)
        layers.append(new)
        everything += new
    return everything


def _depth(t: Term) -> int:
    return 0 if not t.args else 1 + max(_depth(a) for a in t.args)


def term_prestructure(oracle: TheoryOracle, sig: Optional[Signature] = None, depth: int = 1) -> PreStructure:
    """Closed terms up to ``depth`` over the oracle's theory.

    Relation and metric values are read off the theory; applications that
    would exceed the depth collapse to the naming constant of their value.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    sig = sig or oracle.sig
    if any(c not in sig.functions for c in oracle.sig.constants):
        raise ValueError("signature lacks the oracle's element names")
    terms = closed_terms(sig, depth)
    carrier = [str(t) for t in terms]
    by_name = {str(t): t for t in terms}
    funs: Dict[str, Dict[tuple, str]] = {}
    for f, sym in sig.functions.items():
        table = {}
        for args in itertools.product(carrier, repeat=sym.arity):
            t = App(f, tuple(by_name[a] for a in args))
            s = str(t)
            table[args] = s if s in by_name else oracle.name_of(t)
        funs[f] = table
    rels: Dict[str, Dict[tuple, Fraction]] = {}
    for r in sig.relation_names():
        n = sig.relations[r].arity
        rels[r] = {args: oracle.sup_lower(Atom(r, tuple(by_name[a] for a in args)))
                   for args in itertools.product(carrier, repeat=n)}
    metric = None
    if sig.has_metric:
        metric = {(a, b): oracle.sup_lower(Metric(by_name[a], by_name[b]))
                  for a in carrier for b in carrier}
    return PreStructure(sig, carrier, funs, rels, metric)
