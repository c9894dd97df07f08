"""Terms, formulas and signatures of continuous first-order logic.

The core connectives are truncated subtraction (``Monus``), negation and
halving, with ``Sup`` as the only quantifier.  ``Const`` is a primitive
dyadic-numeral node; :func:`expand_numerals` rewrites it into the official
shorthand built from ``neg (phi -. phi)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union

from .numerics import Dyadic, Modulus, ONE, HALF

METRIC = "d"

# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    fn: str
    args: Tuple["Term", ...] = ()

    def __str__(self):
        if not self.args:
            return self.fn
        return f"{self.fn}({','.join(map(str, self.args))})"


Term = Union[Var, App]


def const(name: str) -> App:
    return App(name, ())


def term_vars(t: Term) -> Set[str]:
    if isinstance(t, Var):
        return {t.name}
    out: Set[str] = set()
    for a in t.args:
        out |= term_vars(a)
    return out


def term_depth(t: Term) -> int:
    if isinstance(t, Var) or not t.args:
        return 0
    return 1 + max(term_depth(a) for a in t.args)


def term_constants(t: Term) -> Set[str]:
    if isinstance(t, Var):
        return set()
    if not t.args:
        return {t.fn}
    out: Set[str] = set()
    for a in t.args:
        out |= term_constants(a)
    return out

# ------------------------------------------------------------- formulas


@dataclass(frozen=True)
class Atom:
    pred: str
    args: Tuple[Term, ...] = ()


@dataclass(frozen=True)
class Metric:
    left: Term
    right: Term


@dataclass(frozen=True)
class Monus:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Neg:
    body: "Formula"


@dataclass(frozen=True)
class Half:
    body: "Formula"


@dataclass(frozen=True)
class Sup:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Const:
    value: Dyadic

    def __init__(self, value):
        object.__setattr__(self, "value", Dyadic.of(value))


Formula = Union[Atom, Metric, Monus, Neg, Half, Sup, Const]
CORE_TYPES = (Atom, Metric, Monus, Neg, Half, Sup, Const)


def _cached_hash(self) -> int:
    # formulas are hashed constantly (hash-consing, matching); cache on first use
    try:
        return self.__dict__["_hash"]
    except KeyError:
        h = hash((type(self).__name__,) + tuple(getattr(self, f) for f in self.__dataclass_fields__))
        object.__setattr__(self, "_hash", h)
        return h


for _cls in CORE_TYPES + (Var, App):
    _cls.__hash__ = _cached_hash


def is_formula(x) -> bool:
    return isinstance(x, CORE_TYPES)

# ------------------------------------------------ derived connectives


@dataclass(frozen=True)
class Inf:
    var: str
    body: "ExtFormula"


@dataclass(frozen=True)
class Wedge:
    left: "ExtFormula"
    right: "ExtFormula"


@dataclass(frozen=True)
class Vee:
    left: "ExtFormula"
    right: "ExtFormula"


@dataclass(frozen=True)
class AbsDiff:
    left: "ExtFormula"
    right: "ExtFormula"


@dataclass(frozen=True)
class DotPlus:
    left: "ExtFormula"
    right: "ExtFormula"


@dataclass(frozen=True)
class MonusN:
    """``left -. n right``: ``right`` subtracted ``n`` times."""
    left: "ExtFormula"
    n: int
    right: "ExtFormula"


DerivedConnective = Union[Inf, Wedge, Vee, AbsDiff, DotPlus, MonusN]
ExtFormula = Union[Formula, DerivedConnective]


def inf(x: str, phi: Formula) -> Formula:
    return Neg(Sup(x, Neg(phi)))


def wedge(phi: Formula, psi: Formula) -> Formula:
    return Monus(phi, Monus(phi, psi))


def vee(phi: Formula, psi: Formula) -> Formula:
    return Neg(wedge(Neg(phi), Neg(psi)))


def absdiff(phi: Formula, psi: Formula) -> Formula:
    return vee(Monus(phi, psi), Monus(psi, phi))


def dotplus(phi: Formula, psi: Formula) -> Formula:
    return Neg(Monus(Neg(phi), psi))


def monus_n(psi: Formula, n: int, phi: Formula) -> Formula:
    if n < 0:
        raise ValueError("repetition count must be non-negative")
    out = psi
    for _ in range(n):
        out = Monus(out, phi)
    return out


def expand_derived(phi: ExtFormula) -> Formula:
    """Rewrite every derived connective into core constructors."""
    if isinstance(phi, (Atom, Metric, Const)):
        return phi
    if isinstance(phi, Monus):
        return Monus(expand_derived(phi.left), expand_derived(phi.right))
    if isinstance(phi, Neg):
        return Neg(expand_derived(phi.body))
    if isinstance(phi, Half):
        return Half(expand_derived(phi.body))
    if isinstance(phi, Sup):
        return Sup(phi.var, expand_derived(phi.body))
    if isinstance(phi, Inf):
        return inf(phi.var, expand_derived(phi.body))
    if isinstance(phi, Wedge):
        return wedge(expand_derived(phi.left), expand_derived(phi.right))
    if isinstance(phi, Vee):
        return vee(expand_derived(phi.left), expand_derived(phi.right))
    if isinstance(phi, AbsDiff):
        return absdiff(expand_derived(phi.left), expand_derived(phi.right))
    if isinstance(phi, DotPlus):
        return dotplus(expand_derived(phi.left), expand_derived(phi.right))
    if isinstance(phi, MonusN):
        return monus_n(expand_derived(phi.left), phi.n, expand_derived(phi.right))
    raise TypeError(f"not a formula: {phi!r}")

# ------------------------------------------------------------ signatures


@dataclass(frozen=True)
class Symbol:
    arity: int
    moduli: Tuple[Modulus, ...] = ()

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError("negative arity")
        if not self.moduli:
            object.__setattr__(self, "moduli", tuple(Modulus.identity() for _ in range(self.arity)))
        if len(self.moduli) != self.arity:
            raise ValueError(f"{self.arity}-ary symbol needs {self.arity} moduli")


@dataclass
class Signature:
    """Relation and function symbols with per-argument moduli.

    When ``has_metric`` is set, ``d`` is a binary relation symbol here.
    """

    relations: Dict[str, Symbol] = field(default_factory=dict)
    functions: Dict[str, Symbol] = field(default_factory=dict)
    has_metric: bool = False

    def __post_init__(self):
        self.relations = {k: _sym(v) for k, v in self.relations.items()}
        self.functions = {k: _sym(v) for k, v in self.functions.items()}
        if self.has_metric:
            self.relations.setdefault(METRIC, Symbol(2))
            if self.relations[METRIC].arity != 2:
                raise ValueError("the metric d must be binary")
        elif METRIC in self.relations:
            raise ValueError("'d' is reserved for the metric")
        if not self.relations:
            raise ValueError("a signature needs at least one relation symbol")
        clash = set(self.relations) & set(self.functions)
        if clash:
            raise ValueError(f"symbols used as both relation and function: {sorted(clash)}")

    @property
    def constants(self) -> List[str]:
        return sorted(f for f, s in self.functions.items() if s.arity == 0)

    def relation_names(self, include_metric: bool = False) -> List[str]:
        return sorted(r for r in self.relations if include_metric or r != METRIC)

    def with_constants(self, names: Iterable[str]) -> "Signature":
        funs = dict(self.functions)
        for c in names:
            if c in self.relations or (c in funs and funs[c].arity != 0):
                raise ValueError(f"constant {c!r} clashes with an existing symbol")
            funs[c] = Symbol(0)
        return Signature(dict(self.relations), funs, self.has_metric)

    def copy(self) -> "Signature":
        return Signature(dict(self.relations), dict(self.functions), self.has_metric)

    def check_formula(self, phi: Formula) -> None:
        """Raise ValueError unless phi is well formed over this signature."""
        for node in subformulas(phi):
            if isinstance(node, Atom):
                sym = self.relations.get(node.pred)
                if sym is None or node.pred == METRIC:
                    raise ValueError(f"unknown relation symbol {node.pred!r}")
                if sym.arity != len(node.args):
                    raise ValueError(f"{node.pred} expects {sym.arity} arguments")
                for t in node.args:
                    self.check_term(t)
            elif isinstance(node, Metric):
                if not self.has_metric:
                    raise ValueError("metric used in a signature without d")
                self.check_term(node.left)
                self.check_term(node.right)

    def check_term(self, t: Term) -> None:
        if isinstance(t, Var):
            return
        sym = self.functions.get(t.fn)
        if sym is None:
            raise ValueError(f"unknown function symbol {t.fn!r}")
        if sym.arity != len(t.args):
            raise ValueError(f"{t.fn} expects {sym.arity} arguments")
        for a in t.args:
            self.check_term(a)


def _sym(v) -> Symbol:
    if isinstance(v, Symbol):
        return v
    if isinstance(v, int):
        return Symbol(v)
    arity, moduli = v
    return Symbol(arity, tuple(moduli))

# -------------------------------------------------------------- queries


def subformulas(phi: Formula) -> Iterator[Formula]:
    stack = [phi]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Monus):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, (Neg, Half, Sup)):
            stack.append(node.body)


def atom_terms(phi: Formula) -> Tuple[Term, ...]:
    if isinstance(phi, Atom):
        return phi.args
    if isinstance(phi, Metric):
        return (phi.left, phi.right)
    return ()


def free_vars(phi: Formula) -> Set[str]:
    if isinstance(phi, (Atom, Metric)):
        out: Set[str] = set()
        for t in atom_terms(phi):
            out |= term_vars(t)
        return out
    if isinstance(phi, Const):
        return set()
    if isinstance(phi, Monus):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, (Neg, Half)):
        return free_vars(phi.body)
    if isinstance(phi, Sup):
        return free_vars(phi.body) - {phi.var}
    raise TypeError(f"not a core formula: {phi!r}")


def all_vars(phi: Formula) -> Set[str]:
    """Every variable occurring in phi, free or bound."""
    out: Set[str] = set()
    for node in subformulas(phi):
        if isinstance(node, Sup):
            out.add(node.var)
        for t in atom_terms(node):
            out |= term_vars(t)
    return out


def constants_in(phi: Formula) -> Set[str]:
    out: Set[str] = set()
    for node in subformulas(phi):
        for t in atom_terms(node):
            out |= term_constants(t)
    return out


def is_sentence(phi: Formula) -> bool:
    return not free_vars(phi)


def rank(phi: Formula) -> int:
    if isinstance(phi, (Atom, Metric, Const)):
        return 0
    if isinstance(phi, Monus):
        return rank(phi.left) + rank(phi.right) + 1
    if isinstance(phi, (Neg, Half, Sup)):
        return rank(phi.body) + 1
    raise TypeError(f"not a core formula: {phi!r}")


def size(phi: Formula) -> int:
    return sum(1 for _ in subformulas(phi))


_VAR_INDEX = re.compile(r"^v(\d+)$")


def fresh_var(used: Iterable[str]) -> str:
    """Least ``v<k>`` not among ``used``."""
    taken = set()
    for u in used:
        m = _VAR_INDEX.match(u)
        if m:
            taken.add(int(m.group(1)))
    k = 0
    while k in taken:
        k += 1
    return f"v{k}"


def strip_generalization(phi: Formula) -> Tuple[Formula, List[str]]:
    binders: List[str] = []
    while isinstance(phi, Sup):
        binders.append(phi.var)
        phi = phi.body
    return phi, binders


def generalize(matrix: Formula, binders: Sequence[str]) -> Formula:
    for x in reversed(binders):
        matrix = Sup(x, matrix)
    return matrix

# -------------------------------------------------------------- numerals


def one(base: Formula) -> Formula:
    return Neg(Monus(base, base))


def default_numeral_base(sig: Signature) -> Formula:
    name = min(sig.relations)
    arity = sig.relations[name].arity
    if name == METRIC:
        return Metric(Var("v0"), Var("v1"))
    return Atom(name, tuple(Var(f"v{i}") for i in range(arity)))


def numeral(value: Dyadic, base: Formula) -> Formula:
    """A Const-free formula built from ``neg (base -. base)`` that denotes value."""
    v = Dyadic.of(value).value
    if v == 1:
        return one(base)
    if v == 0:
        return Neg(one(base))
    if v <= HALF:
        return Half(numeral(Dyadic.of(2 * v), base))
    return Neg(Half(numeral(Dyadic.of(2 * (ONE - v)), base)))


def expand_numerals(phi: Formula, base: Optional[Formula] = None,
                    sig: Optional[Signature] = None) -> Formula:
    if base is None:
        if sig is None:
            raise ValueError("expand_numerals needs a base formula or a signature")
        base = default_numeral_base(sig)
    if isinstance(phi, Const):
        return numeral(phi.value, base)
    if isinstance(phi, (Atom, Metric)):
        return phi
    if isinstance(phi, Monus):
        return Monus(expand_numerals(phi.left, base), expand_numerals(phi.right, base))
    if isinstance(phi, Neg):
        return Neg(expand_numerals(phi.body, base))
    if isinstance(phi, Half):
        return Half(expand_numerals(phi.body, base))
    if isinstance(phi, Sup):
        return Sup(phi.var, expand_numerals(phi.body, base))
    raise TypeError(f"not a core formula: {phi!r}")


def is_propositional(phi: Formula) -> bool:
    """Only nullary atoms, constants and the three connectives."""
    for node in subformulas(phi):
        if isinstance(node, (Metric, Sup)):
            return False
        if isinstance(node, Atom) and node.args:
            return False
    return True


def prop_atoms(phi: Formula) -> Set[str]:
    return {n.pred for n in subformulas(phi) if isinstance(n, Atom)}
