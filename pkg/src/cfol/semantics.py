"""Finite continuous pre-structures: evaluation, validation, quotient, model search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .numerics import format_rational
from .syntax import (
    METRIC, Atom, Const, Formula, Half, Metric, Monus, Neg, Signature,
    Sup, Term, Var, prop_atoms, vee,
)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class PreStructure:
    sig: Signature
    carrier: Tuple[str, ...]
    fun_tables: Dict[str, Dict[tuple, str]] = field(default_factory=dict)
    rel_tables: Dict[str, Dict[tuple, Fraction]] = field(default_factory=dict)
    metric: Optional[Dict[Tuple[str, str], Fraction]] = None

    def __post_init__(self):
        self.carrier = tuple(self.carrier)
        if not self.carrier:
            raise ValueError("carrier must be non-empty")
        if len(set(self.carrier)) != len(self.carrier):
            raise ValueError("duplicate carrier element")
        self.index = {a: i for i, a in enumerate(self.carrier)}
        self.rel_tables = {r: {tuple(k): Fraction(v) for k, v in t.items()}
                           for r, t in self.rel_tables.items()}
        self.fun_tables = {f: {tuple(k): v for k, v in t.items()} for f, t in self.fun_tables.items()}
        if self.metric is not None:
            self.metric = {tuple(k): Fraction(v) for k, v in self.metric.items()}
        elif self.sig.has_metric:
            raise ValueError("signature has a metric but no metric table was given")

    def d(self, a: str, b: str) -> Fraction:
        return self.metric[(a, b)]

    def relation(self, r: str, args: tuple) -> Fraction:
        if r == METRIC:
            return self.metric[args]
        return self.rel_tables[r][args]


class Assignment:
    """Total map from variables to the carrier, defaulting to one element."""

    __slots__ = ("values", "default")

    def __init__(self, default: str, values: Optional[Mapping[str, str]] = None):
        self.default = default
        self.values = dict(values or {})

    @classmethod
    def default_for(cls, M: PreStructure, values: Optional[Mapping[str, str]] = None) -> "Assignment":
        for a in (values or {}).values():
            if a not in M.index:
                raise ValueError(f"assignment value {a!r} is not in the carrier")
        return cls(M.carrier[0], values)

    def __getitem__(self, x: str) -> str:
        return self.values.get(x, self.default)

    def updated(self, x: str, a: str) -> "Assignment":
        vals = dict(self.values)
        vals[x] = a
        return Assignment(self.default, vals)

    def __repr__(self):
        return f"Assignment({self.values!r}, default={self.default!r})"


def _assignment(M: PreStructure, sigma) -> Assignment:
    if sigma is None:
        return Assignment.default_for(M)
    if isinstance(sigma, Assignment):
        return sigma
    return Assignment.default_for(M, sigma)

# ------------------------------------------------------------ evaluation


def eval_term(M: PreStructure, sigma, t: Term) -> str:
    sigma = _assignment(M, sigma)
    return _term(M, sigma, t)


def _term(M: PreStructure, sigma, t: Term) -> str:
    if isinstance(t, Var):
        return sigma[t.name]
    args = tuple(_term(M, sigma, a) for a in t.args)
    return M.fun_tables[t.fn][args]


def eval(M: PreStructure, sigma, phi: Formula) -> Fraction:  # noqa: A001 - shadows the builtin on purpose
    """Exact value of phi in M under sigma (a dict, an Assignment or None)."""
    sigma = _assignment(M, sigma)
    env = dict(sigma.values)
    return _eval(M, env, sigma.default, phi)


def _eval(M: PreStructure, env: dict, default: str, phi: Formula) -> Fraction:
    if isinstance(phi, Atom):
        args = tuple(_term_env(M, env, default, t) for t in phi.args)
        return M.rel_tables[phi.pred][args]
    if isinstance(phi, Metric):
        return M.metric[(_term_env(M, env, default, phi.left), _term_env(M, env, default, phi.right))]
    if isinstance(phi, Const):
        return phi.value.value
    if isinstance(phi, Monus):
        d = _eval(M, env, default, phi.left) - _eval(M, env, default, phi.right)
        return d if d > 0 else ZERO
    if isinstance(phi, Neg):
        return ONE - _eval(M, env, default, phi.body)
    if isinstance(phi, Half):
        return _eval(M, env, default, phi.body) / 2
    if isinstance(phi, Sup):
        x = phi.var
        had = x in env
        old = env.get(x)
        best = None
        for a in M.carrier:
            env[x] = a
            v = _eval(M, env, default, phi.body)
            if best is None or v > best:
                best = v
                if best == 1:
                    break
        if had:
            env[x] = old
        else:
            del env[x]
        return best
    raise TypeError(f"not a core formula: {phi!r}")


def _term_env(M, env, default, t) -> str:
    if isinstance(t, Var):
        return env.get(t.name, default)
    return M.fun_tables[t.fn][tuple(_term_env(M, env, default, a) for a in t.args)]


def models(M: PreStructure, sigma, gamma: Iterable[Formula]) -> bool:
    return all(eval(M, sigma, phi) == 0 for phi in gamma)

# ------------------------------------------------------------ validation


@dataclass(frozen=True)
class Violation:
    kind: str
    witnesses: Tuple[str, ...]

    def __str__(self):
        return f"VIOLATION {self.kind} {' '.join(self.witnesses)}".rstrip()


@dataclass
class ValidationReport:
    violations: List[Violation]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def text(self) -> str:
        if self.ok:
            return "VALID STRUCTURE\n"
        return "".join(f"{v}\n" for v in self.violations)


def _fmt_args(args) -> str:
    return "(" + ",".join(args) + ")"


def validate(M: PreStructure) -> ValidationReport:
    """Check totality, value ranges, the pseudo-metric axioms and the moduli
    conditions (two-sided, via the exact residual of each modulus)."""
    out: List[Violation] = []
    sig, C = M.sig, M.carrier
    for f, sym in sorted(sig.functions.items()):
        table = M.fun_tables.get(f)
        if table is None:
            out.append(Violation("missing-table", (f,)))
            continue
        for args in itertools.product(C, repeat=sym.arity):
            if table.get(args) not in M.index:
                out.append(Violation("totality", (f + _fmt_args(args),)))
    for r in sig.relation_names():
        table = M.rel_tables.get(r)
        if table is None:
            out.append(Violation("missing-table", (r,)))
            continue
        for args in itertools.product(C, repeat=sig.relations[r].arity):
            v = table.get(args)
            if v is None:
                out.append(Violation("totality", (r + _fmt_args(args),)))
            elif not 0 <= v <= 1:
                out.append(Violation("range", (r + _fmt_args(args), format_rational(v))))
    if not sig.has_metric:
        return ValidationReport(out)
    d = M.metric
    for a, b in itertools.product(C, repeat=2):
        v = d.get((a, b))
        if v is None:
            out.append(Violation("totality", (f"d({a},{b})",)))
        elif not 0 <= v <= 1:
            out.append(Violation("range", (f"d({a},{b})", format_rational(v))))
    if out:
        return ValidationReport(out)
    for a in C:
        if d[(a, a)] != 0:
            out.append(Violation("reflexivity", (f"d({a},{a})={format_rational(d[(a, a)])}",)))
    for i, a in enumerate(C):
        for b in C[i + 1:]:
            if d[(a, b)] != d[(b, a)]:
                out.append(Violation("symmetry", (a, b)))
    for a, b, c in itertools.product(C, repeat=3):
        if d[(a, c)] > d[(a, b)] + d[(b, c)]:
            out.append(Violation("triangle", (a, b, c)))
    out.extend(_moduli_violations(M))
    return ValidationReport(out)


def _moduli_violations(M: PreStructure) -> List[Violation]:
    out = []
    sig, C, d = M.sig, M.carrier, M.metric
    symbols = [("rel", r, s) for r, s in sorted(sig.relations.items())]
    symbols += [("fun", f, s) for f, s in sorted(sig.functions.items())]
    for kind, name, sym in symbols:
        for i, delta in enumerate(sym.moduli):
            for c, e in itertools.permutations(C, 2):
                eps = delta.residual(d[(c, e)])
                if eps is None:
                    continue
                for rest in itertools.product(C, repeat=sym.arity - 1):
                    x = rest[:i] + (c,) + rest[i:]
                    y = rest[:i] + (e,) + rest[i:]
                    if kind == "rel":
                        diff = M.relation(name, x) - M.relation(name, y)
                    else:
                        diff = d[(M.fun_tables[name][x], M.fun_tables[name][y])]
                    if diff > eps:
                        out.append(Violation("modulus", (f"{name}[{i}]", c, e, _fmt_args(rest))))
    return out

# -------------------------------------------------------- quotient


@dataclass
class Morphism:
    source: PreStructure
    target: PreStructure
    mapping: Dict[str, str]

    def is_surjective(self) -> bool:
        return set(self.mapping.values()) == set(self.target.carrier)

    def is_morphism(self) -> bool:
        src, tgt, h = self.source, self.target, self.mapping
        for f, sym in src.sig.functions.items():
            for args in itertools.product(src.carrier, repeat=sym.arity):
                if h[src.fun_tables[f][args]] != tgt.fun_tables[f][tuple(h[a] for a in args)]:
                    return False
        for r, sym in src.sig.relations.items():
            for args in itertools.product(src.carrier, repeat=sym.arity):
                if src.relation(r, args) != tgt.relation(r, tuple(h[a] for a in args)):
                    return False
        return True


def quotient_completion(M: PreStructure) -> Tuple[PreStructure, Morphism]:
    """Collapse distance-zero classes.  A finite metric space is complete, so
    the quotient is already the completion."""
    report = validate(M)
    if not report.ok:
        raise ValueError("structure does not validate:\n" + report.text())
    if M.metric is None:
        tgt = PreStructure(M.sig, M.carrier, M.fun_tables, M.rel_tables, None)
        return tgt, Morphism(M, tgt, {a: a for a in M.carrier})
    rep: Dict[str, str] = {}
    for a in M.carrier:
        rep[a] = next(b for b in M.carrier if M.metric[(a, b)] == 0)
    keep = tuple(a for a in M.carrier if rep[a] == a)
    funs = {f: {args: rep[t[args]] for args in itertools.product(keep, repeat=M.sig.functions[f].arity)}
            for f, t in M.fun_tables.items()}
    rels = {r: {args: t[args] for args in itertools.product(keep, repeat=M.sig.relations[r].arity)}
            for r, t in M.rel_tables.items()}
    metric = {(a, b): M.metric[(a, b)] for a in keep for b in keep}
    tgt = PreStructure(M.sig, keep, funs, rels, metric)
    return tgt, Morphism(M, tgt, rep)

# ------------------------------------------------------ model search


def _entry(r: str, args: tuple) -> str:
    return f"{r}({','.join(args)})"


def ground(M_carrier: Sequence[str], funs, metric, phi: Formula, env: dict, default: str) -> Formula:
    """Propositional formula in the unknown relation entries: atoms become
    nullary atoms named ``P(a,b)``, sup becomes a finite max."""

    def term(t):
        if isinstance(t, Var):
            return env.get(t.name, default)
        return funs[t.fn][tuple(term(a) for a in t.args)]

    def go(f):
        if isinstance(f, Atom):
            return Atom(_entry(f.pred, tuple(term(t) for t in f.args)))
        if isinstance(f, Metric):
            pair = (term(f.left), term(f.right))
            if _dyadic(metric[pair]):
                return Const(metric[pair])
            return Atom(_entry(METRIC, pair))
        if isinstance(f, Const):
            return f
        if isinstance(f, Monus):
            return Monus(go(f.left), go(f.right))
        if isinstance(f, Neg):
            return Neg(go(f.body))
        if isinstance(f, Half):
            return Half(go(f.body))
        if isinstance(f, Sup):
            had, old = f.var in env, env.get(f.var)
            parts = []
            for a in M_carrier:
                env[f.var] = a
                parts.append(go(f.body))
            if had:
                env[f.var] = old
            else:
                del env[f.var]
            out = parts[0]
            for p in parts[1:]:
                out = vee(out, p)
            return out
        raise TypeError(f"not a core formula: {f!r}")

    return go(phi)


def _dyadic(x: Fraction) -> bool:
    den = x.denominator
    return den & (den - 1) == 0


def solve_predicates(sig: Signature, carrier: Sequence[str], fun_tables, metric_table,
                     gamma: Sequence[Formula], enumerate_functions: bool = False,
                     assignment: Optional[Mapping[str, str]] = None) -> Optional[PreStructure]:
    """Relation tables making every member of gamma vanish under the default
    assignment, with the moduli conditions as linear side constraints.

    Returns the structure with the lexicographically least table entries, or
    None.  With ``enumerate_functions`` (carriers of size <= 3) every
    function table is tried in order and ``fun_tables`` may be None.
    """
    carrier = tuple(carrier)
    if not carrier:
        raise ValueError("carrier must be non-empty")
    for phi in gamma:
        sig.check_formula(phi)
    if sig.has_metric and metric_table is None:
        metric_table = {(a, b): (ZERO if a == b else ONE) for a in carrier for b in carrier}
    if enumerate_functions:
        if len(carrier) > 3:
            raise ValueError("function-table enumeration is limited to carriers of size <= 3")
        for tables in _all_function_tables(sig, carrier):
            M = _solve_fixed(sig, carrier, tables, metric_table, gamma, assignment)
            if M is not None:
                return M
        return None
    return _solve_fixed(sig, carrier, fun_tables or {}, metric_table, gamma, assignment)


def _all_function_tables(sig: Signature, carrier):
    names = sorted(sig.functions)
    keys = []
    for f in names:
        for args in itertools.product(carrier, repeat=sig.functions[f].arity):
            keys.append((f, args))
    for values in itertools.product(carrier, repeat=len(keys)):
        tables: Dict[str, Dict[tuple, str]] = {f: {} for f in names}
        for (f, args), v in zip(keys, values):
            tables[f][args] = v
        yield tables


def _solve_fixed(sig, carrier, fun_tables, metric, gamma, assignment) -> Optional[PreStructure]:
    from . import prop
    from .linear import Lin

    rels = sig.relation_names()
    blank = {r: {args: ZERO for args in itertools.product(carrier, repeat=sig.relations[r].arity)}
             for r in rels}
    skeleton = PreStructure(sig, carrier, fun_tables, blank, metric)
    # all-zero relations satisfy their moduli, so any violation here comes
    # from the fixed function or metric tables
    if not validate(skeleton).ok:
        return None
    names = [_entry(r, args) for r in rels for args in blank[r]]
    extra = []
    if metric is not None:
        for r in rels:
            sym = sig.relations[r]
            for i, delta in enumerate(sym.moduli):
                for c, e in itertools.combinations(carrier, 2):
                    eps = delta.residual(metric[(c, e)])
                    if eps is None:
                        continue
                    for rest in itertools.product(carrier, repeat=sym.arity - 1):
                        x = _entry(r, rest[:i] + (c,) + rest[i:])
                        y = _entry(r, rest[:i] + (e,) + rest[i:])
                        diff = Lin.var(x) - Lin.var(y)
                        extra.append((Lin(None, eps) - diff).geq0())
                        extra.append((Lin(None, eps) + diff).geq0())
    sigma0 = dict(assignment or {})
    grounded = [ground(carrier, fun_tables, metric, phi, dict(sigma0), carrier[0]) for phi in gamma]
    # non-dyadic metric values enter as pinned variables
    pinned = {a for g in grounded for a in prop_atoms(g) if a.startswith(METRIC + "(")}
    for a in sorted(pinned):
        v = metric[tuple(a[2:-1].split(","))]
        extra.append((Lin.var(a) - Lin(None, v)).geq0())
        extra.append((Lin(None, v) - Lin.var(a)).geq0())
    val = prop.solve_constrained(grounded, names, extra)
    if val is None:
        return None
    tables = {r: {args: val[_entry(r, args)] for args in blank[r]} for r in rels}
    M = PreStructure(sig, carrier, fun_tables, tables, metric)
    assert validate(M).ok and models(M, sigma0, gamma), "internal error: solver witness fails"
    return M
