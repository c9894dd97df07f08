"""Continuous and Lukasiewicz propositional logic, decided exactly.

Formulas are compiled to a hash-consed DAG and linearized by a depth-first
case split on every truncated subtraction whose sign is not already fixed.
Each closed piece is a polyhedron in the unit cube on which the value is
affine; pieces are pruned by exact feasibility and optimized by
Fourier-Motzkin elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from . import linear
from .linear import Lin
from .syntax import (
    Atom, Const, Formula, Half, Metric, Monus, Neg, Sup, is_propositional,
)

ZERO = Fraction(0)
ONE = Fraction(1)

Valuation = Dict[str, Fraction]
MODES = ("continuous", "lukasiewicz")


@dataclass(frozen=True)
class Valid:
    def __str__(self):
        return "VALID"


@dataclass(frozen=True)
class CounterModel:
    valuation: Valuation
    value: Fraction


@dataclass(frozen=True)
class Holds:
    def __str__(self):
        return "HOLDS"


@dataclass(frozen=True)
class Model:
    valuation: Valuation


@dataclass(frozen=True)
class Unsat:
    def __str__(self):
        return "UNSAT"


# ------------------------------------------------------------- compiling

# IR node kinds: ("const", v) ("var", name) ("monus", i, j) ("neg", i) ("half", i)


class _Dag:
    def __init__(self, abstract: bool = False, forced=frozenset()):
        self.nodes: List[tuple] = []
        self.ids: Dict[tuple, int] = {}
        self.abstract = abstract
        self.forced = forced
        self.atoms: Dict[Formula, str] = {}
        self.n_monus = 0

    def add(self, node: tuple) -> int:
        i = self.ids.get(node)
        if i is None:
            i = len(self.nodes)
            self.nodes.append(node)
            self.ids[node] = i
            if node[0] == "monus":
                self.n_monus += 1
        return i

    def atom_name(self, phi: Formula) -> str:
        if isinstance(phi, Atom) and not phi.args and phi not in self.forced:
            return phi.pred
        if not self.abstract:
            raise ValueError("not a propositional formula: quantifier or non-nullary atom present")
        name = self.atoms.get(phi)
        if name is None:
            name = self.atoms[phi] = f"@{len(self.atoms)}"
        return name

    def compile(self, phi: Formula) -> int:
        # iterative post-order; formulas can be deep
        memo: Dict[int, int] = {}
        stack = [(phi, False)]
        while stack:
            f, ready = stack.pop()
            key = id(f)
            if key in memo:
                continue
            if f in self.forced and not isinstance(f, Const):
                memo[key] = self.add(("var", self.atom_name(f)))
            elif isinstance(f, Const):
                memo[key] = self.add(("const", f.value.value))
            elif isinstance(f, Monus):
                if ready:
                    memo[key] = self.add(("monus", memo[id(f.left)], memo[id(f.right)]))
                else:
                    stack.append((f, True))
                    stack.append((f.right, False))
                    stack.append((f.left, False))
            elif isinstance(f, (Neg, Half)):
                if ready:
                    memo[key] = self.add(("neg" if isinstance(f, Neg) else "half", memo[id(f.body)]))
                else:
                    stack.append((f, True))
                    stack.append((f.body, False))
            elif isinstance(f, (Atom, Metric, Sup)):
                memo[key] = self.add(("var", self.atom_name(f)))
            else:
                raise TypeError(f"not a core formula: {f!r}")
        return memo[id(phi)]

    def variables(self) -> List[str]:
        return sorted(n[1] for n in self.nodes if n[0] == "var")


def _check_mode(phi: Formula, mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "continuous":
        return
    from .syntax import subformulas
    for node in subformulas(phi):
        if isinstance(node, Half):
            raise ValueError("half is not a Lukasiewicz connective")
        if isinstance(node, Const) and node.value.value not in (ZERO, ONE):
            raise ValueError("only the constants #0 and #1 are Lukasiewicz formulas")


def _require_prop(phi: Formula) -> None:
    if not is_propositional(phi):
        raise ValueError("not a propositional formula: quantifier or non-nullary atom present")

# ------------------------------------------------------------ evaluation


def eval_prop(v: Mapping[str, Fraction], phi: Formula) -> Fraction:
    _require_prop(phi)
    return _eval(v, phi)


def _eval(v: Mapping[str, Fraction], phi: Formula, names: Optional[Dict[Formula, str]] = None) -> Fraction:
    memo: Dict[int, Fraction] = {}
    stack = [(phi, False)]
    while stack:
        f, ready = stack.pop()
        key = id(f)
        if key in memo:
            continue
        if names and f in names:
            memo[key] = Fraction(v[names[f]])
        elif isinstance(f, Const):
            memo[key] = f.value.value
        elif isinstance(f, Atom) and not f.args:
            memo[key] = Fraction(v[f.pred])
        elif isinstance(f, (Atom, Metric, Sup)):
            memo[key] = Fraction(v[names[f]])
        elif isinstance(f, Monus):
            if ready:
                d = memo[id(f.left)] - memo[id(f.right)]
                memo[key] = d if d > 0 else ZERO
            else:
                stack += [(f, True), (f.right, False), (f.left, False)]
        elif isinstance(f, (Neg, Half)):
            if ready:
                b = memo[id(f.body)]
                memo[key] = ONE - b if isinstance(f, Neg) else b / 2
            else:
                stack += [(f, True), (f.body, False)]
        else:
            raise TypeError(f"not a core formula: {f!r}")
    return memo[id(phi)]

# --------------------------------------------------------- linearization


class _Branch:
    # cons: the piece so far; exprs: linear form of each linearized node;
    # point: some point satisfying cons, so one side of each split is free
    __slots__ = ("cons", "exprs", "point")

    def __init__(self, cons, exprs, point):
        self.cons = cons
        self.exprs = exprs
        self.point = point


def _restrict(br: _Branch, e: Lin, exprs) -> Optional[_Branch]:
    """br intersected with e >= 0, or None if empty."""
    cons = br.cons + [e.geq0()]
    if e.at(br.point) >= 0:
        return _Branch(cons, exprs, br.point)
    pt = linear.find_point(cons)
    return None if pt is None else _Branch(cons, exprs, pt)


def _pieces(dag: _Dag, sigma: Sequence[int], goal: int, base_cons) -> Iterator[Tuple[_Branch, Lin]]:
    """Yield (branch, objective) for every non-empty closed piece on which
    every sigma root vanishes."""
    nodes = dag.nodes

    def lin(i: int, br: _Branch) -> Iterator[_Branch]:
        if i in br.exprs:
            yield br
            return
        node = nodes[i]
        kind = node[0]
        if kind == "const":
            yield _Branch(br.cons, {**br.exprs, i: Lin(None, node[1])}, br.point)
        elif kind == "var":
            yield _Branch(br.cons, {**br.exprs, i: Lin.var(node[1])}, br.point)
        elif kind in ("neg", "half"):
            for b in lin(node[1], br):
                e = b.exprs[node[1]]
                e = Lin(None, ONE) - e if kind == "neg" else e.scale(Fraction(1, 2))
                yield _Branch(b.cons, {**b.exprs, i: e}, b.point)
        else:
            for b1 in lin(node[1], br):
                for b2 in lin(node[2], b1):
                    d = b2.exprs[node[1]] - b2.exprs[node[2]]
                    if d.is_const():
                        yield _Branch(b2.cons, {**b2.exprs, i: d if d.const > 0 else Lin()}, b2.point)
                        continue
                    up = _restrict(b2, d, {**b2.exprs, i: d})
                    if up is not None:
                        yield up
                    down = _restrict(b2, -d, {**b2.exprs, i: Lin()})
                    if down is not None:
                        yield down

    def walk(k: int, br: _Branch) -> Iterator[Tuple[_Branch, Lin]]:
        if k == len(sigma):
            for b in lin(goal, br):
                yield b, b.exprs[goal]
            return
        root = sigma[k]
        for b in lin(root, br):
            e = b.exprs[root]
            if e.is_const():
                if e.const == 0:
                    yield from walk(k + 1, b)
                continue
            nb = _restrict(b, -e, b.exprs)
            if nb is not None:
                yield from walk(k + 1, nb)

    base = list(base_cons)
    pt = linear.find_point(base)
    if pt is None:
        return
    yield from walk(0, _Branch(base, {}, pt))


def _piece_max(br: _Branch, obj: Lin) -> Fraction:
    if obj.is_const():
        return obj.const
    return linear.maximize(br.cons, obj)


def _optimize(dag: _Dag, sigma: Sequence[int], goal: int, extra_vars: Sequence[str] = (),
              extra_cons: Sequence = ()) -> Optional[Tuple[Fraction, Valuation]]:
    """Max of goal over valuations satisfying sigma, with the lex-least maximizer."""
    names = sorted(set(dag.variables()) | set(extra_vars))
    results = []
    best = None
    for br, obj in _pieces(dag, sigma, goal, linear.box(names) + list(extra_cons)):
        val = _piece_max(br, obj)
        results.append((val, br.cons, obj))
        if best is None or val > best:
            best = val
    if best is None:
        return None
    witness = None
    for val, cons, obj in results:
        if val != best:
            continue
        pt = linear.lexmin(cons + [(obj - Lin(None, best)).geq0()], names)
        key = tuple(pt[n] for n in names)
        if witness is None or key < witness[0]:
            witness = (key, pt)
    return best, dict(witness[1])


def _positive_somewhere(dag: _Dag, sigma: Sequence[int], goal: int) -> bool:
    """Does some model of sigma give goal a positive value?"""
    names = sorted(dag.variables())
    for br, obj in _pieces(dag, sigma, goal, linear.box(names)):
        if obj.at(br.point) > 0 or _piece_max(br, obj) > 0:
            return True
    return False


def _prepare(sigma: Sequence[Formula], phi: Optional[Formula], mode: str, abstract: bool = False,
             forced=frozenset()):
    dag = _Dag(abstract, forced)
    for f in list(sigma) + ([phi] if phi is not None else []):
        if not abstract:
            _require_prop(f)
        _check_mode(f, mode)
    roots = [dag.compile(f) for f in sigma]
    goal = dag.compile(phi) if phi is not None else dag.add(("const", ZERO))
    return dag, roots, goal


def _reverify(v: Valuation, sigma, phi, value, dag: _Dag) -> None:
    names = {f: n for f, n in dag.atoms.items()}
    for s in sigma:
        assert _eval(v, s, names) == 0, "internal error: witness violates a premise"
    if phi is not None:
        assert _eval(v, phi, names) == value, "internal error: witness value mismatch"


def _complete(v: Valuation, dag: _Dag) -> Valuation:
    # atoms absent from the DAG (none today) would default to 0
    return {n: v.get(n, ZERO) for n in dag.variables()}


def decide_validity(phi: Formula, mode: str = "continuous") -> Union[Valid, CounterModel]:
    dag, _, goal = _prepare([], phi, mode)
    value, v = _optimize(dag, [], goal)
    if value == 0:
        return Valid()
    v = _complete(v, dag)
    _reverify(v, [], phi, value, dag)
    return CounterModel(v, value)


def decide_satisfiability(sigma: Sequence[Formula], mode: str = "continuous") -> Union[Model, Unsat]:
    dag, roots, goal = _prepare(sigma, None, mode)
    res = _optimize(dag, roots, goal)
    if res is None:
        return Unsat()
    v = _complete(res[1], dag)
    _reverify(v, sigma, None, None, dag)
    return Model(v)


def degree_of_truth(sigma: Sequence[Formula], phi: Formula,
                    mode: str = "continuous") -> Union[Fraction, Unsat]:
    """sup of v(phi) over models of sigma; Unsat when sigma has no model."""
    res = _consequence(sigma, phi, mode, abstract=False)
    return Unsat() if res is None else res[0]


def decide_consequence(sigma: Sequence[Formula], phi: Formula,
                       mode: str = "continuous") -> Union[Holds, CounterModel]:
    """Holds iff every model of sigma gives phi the value 0.

    A counter-model is a model of sigma maximizing phi (vacuous Holds when
    sigma is unsatisfiable).
    """
    res = _consequence(sigma, phi, mode, abstract=False)
    if res is None or res[0] == 0:
        return Holds()
    return CounterModel(res[1], res[0])


def _consequence(sigma, phi, mode, abstract, forced=frozenset()):
    dag, roots, goal = _prepare(sigma, phi, mode, abstract, forced)
    res = _optimize(dag, roots, goal)
    if res is None:
        return None
    value, v = res
    v = _complete(v, dag)
    _reverify(v, sigma, phi, value, dag)
    return value, v


def abstract_consequence(sigma: Sequence[Formula], phi: Formula, forced=frozenset()) -> bool:
    """Propositional consequence after replacing every atom, metric atom and
    sup-subformula by a propositional variable (structurally equal nodes share
    one variable).  Sound for first-order formulas.

    Subformulas in ``forced`` are abstracted too; that only makes the test
    stronger, so a positive answer stays sound.
    """
    dag, roots, goal = _prepare(sigma, phi, "continuous", True, frozenset(forced))
    return not _positive_somewhere(dag, roots, goal)


def abstract_degree(sigma: Sequence[Formula], phi: Formula) -> Optional[Fraction]:
    res = _consequence(sigma, phi, "continuous", abstract=True)
    return None if res is None else res[0]


def solve_constrained(sigma: Sequence[Formula], names: Sequence[str],
                      extra_cons: Sequence) -> Optional[Valuation]:
    """Lex-least valuation of ``names`` (plus the atoms of sigma) that satisfies
    sigma and the extra linear constraints, or None."""
    dag, roots, goal = _prepare(sigma, None, "continuous")
    res = _optimize(dag, roots, goal, names, extra_cons)
    return None if res is None else res[1]


def format_valuation(v: Mapping[str, Fraction]) -> str:
    from .numerics import format_rational
    return " ".join(f"v({k})={format_rational(v[k])}" for k in sorted(v))
