"""Seeded random signatures, structures, formulas, axiom instances and proofs.

Used by the test-suite and the acceptance runner.  Every generator takes a
``random.Random`` so runs are reproducible.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .kernel import MP, Ax, Hyp, Proof, Step
from .numerics import Dyadic, Modulus, min_moduli, modulus_sup_below
from .semantics import PreStructure, validate
from .subst import subst_free
from .syntax import (
    METRIC, App, Atom, Const, Formula, Half, Metric, Monus, Neg, Signature, Sup,
    Symbol, Term, Var, free_vars, wedge,
)

VARS = ("x", "y", "z")


def random_dyadic(rng: random.Random, max_n: int = 3, positive: bool = False) -> Dyadic:
    n = rng.randint(0, max_n)
    lo = 1 if positive else 0
    return Dyadic(rng.randint(lo, 2 ** n), n)


def random_modulus(rng: random.Random) -> Modulus:
    """Nondecreasing PL modulus with dyadic breakpoints (jumps allowed)."""
    k = rng.randint(1, 3)
    eps = sorted(Fraction(rng.randint(1, 8), 8) for _ in range(k))
    vals = sorted(Fraction(rng.randint(1, 8), 8) for _ in range(k))
    pts = list(zip(eps, vals))
    if rng.random() < 0.3:
        pts.insert(0, (Fraction(0), Fraction(0)))
    return Modulus(pts)


def random_signature(rng: random.Random, n_rel: int = 2, n_fun: int = 1, n_const: int = 1,
                     metric: bool = True, max_arity: int = 2) -> Signature:
    rels = {f"P{i}" if i else "P": Symbol(rng.randint(0, max_arity)) for i in range(n_rel)}
    funs = {f"f{i}" if i else "f": Symbol(rng.randint(1, max_arity)) for i in range(n_fun)}
    for i in range(n_const):
        funs[f"k{i}" if i else "k"] = Symbol(0)
    return Signature(rels, funs, metric)


def random_term(rng: random.Random, sig: Signature, depth: int = 2,
                variables: Sequence[str] = VARS) -> Term:
    funs = [f for f, s in sig.functions.items() if s.arity > 0]
    consts = sig.constants
    r = rng.random()
    if depth <= 0 or not funs or r < 0.5:
        if consts and r < 0.15:
            return App(rng.choice(consts), ())
        return Var(rng.choice(variables))
    f = rng.choice(sorted(funs))
    return App(f, tuple(random_term(rng, sig, depth - 1, variables) for _ in range(sig.functions[f].arity)))


def random_atom(rng: random.Random, sig: Signature, term_depth: int = 1,
                variables: Sequence[str] = VARS) -> Formula:
    rels = sig.relation_names(include_metric=True)
    r = rng.choice(rels)
    if r == METRIC:
        return Metric(random_term(rng, sig, term_depth, variables), random_term(rng, sig, term_depth, variables))
    return Atom(r, tuple(random_term(rng, sig, term_depth, variables) for _ in range(sig.relations[r].arity)))


def random_formula(rng: random.Random, sig: Signature, depth: int = 3, term_depth: int = 1,
                   variables: Sequence[str] = VARS, quantifiers: bool = True,
                   consts: bool = True) -> Formula:
    if depth <= 0 or rng.random() < 0.2:
        if consts and rng.random() < 0.15:
            return Const(random_dyadic(rng))
        return random_atom(rng, sig, term_depth, variables)
    ops = ["monus", "monus", "neg", "half"] + (["sup"] if quantifiers else [])
    op = rng.choice(ops)
    sub = lambda: random_formula(rng, sig, depth - 1, term_depth, variables, quantifiers, consts)  # noqa: E731
    if op == "monus":
        return Monus(sub(), sub())
    if op == "neg":
        return Neg(sub())
    if op == "half":
        return Half(sub())
    return Sup(rng.choice(variables), sub())


def random_sentence(rng: random.Random, sig: Signature, depth: int = 3, **kw) -> Formula:
    phi = random_formula(rng, sig, depth, **kw)
    for x in sorted(free_vars(phi)):
        phi = Sup(x, phi)
    return phi


def random_prop_formula(rng: random.Random, atoms: Sequence[str], depth: int = 3,
                        half: bool = True, consts: bool = True) -> Formula:
    if depth <= 0 or rng.random() < 0.15:
        if consts and rng.random() < 0.2:
            return Const(random_dyadic(rng))
        return Atom(rng.choice(atoms))
    ops = ["monus", "monus", "neg"] + (["half"] if half else [])
    op = rng.choice(ops)
    sub = lambda: random_prop_formula(rng, atoms, depth - 1, half, consts)  # noqa: E731
    if op == "monus":
        return Monus(sub(), sub())
    if op == "neg":
        return Neg(sub())
    return Half(sub())

# ------------------------------------------------------------ structures


def random_structure(rng: random.Random, sig: Signature, size: int,
                     zero_pairs: bool = False) -> PreStructure:
    """A structure whose tables respect distance-zero classes.

    The metric comes from points on a line (a pseudo-metric).  Moduli are not
    adjusted here; see :func:`fit_moduli`.
    """
    carrier = [f"e{i}" for i in range(size)]
    if zero_pairs and size > 1:
        n_cls = rng.randint(1, size - 1)
    else:
        n_cls = size
    cls = list(range(n_cls)) + [rng.randrange(n_cls) for _ in range(size - n_cls)]
    rng.shuffle(cls)
    pos = [Fraction(rng.randint(0, 8), 8) for _ in range(n_cls)]
    while len(set(pos)) < n_cls:  # distinct classes at distinct points
        pos = [Fraction(rng.randint(0, 16), 16) for _ in range(n_cls)]
    metric = None
    if sig.has_metric:
        metric = {(a, b): abs(pos[ca] - pos[cb]) for a, ca in zip(carrier, cls) for b, cb in zip(carrier, cls)}
    cls_of = dict(zip(carrier, cls))
    funs = {}
    for f, sym in sig.functions.items():
        by_class = {}
        table = {}
        for args in itertools.product(carrier, repeat=sym.arity):
            key = tuple(cls_of[a] for a in args)
            if key not in by_class:
                by_class[key] = rng.choice(carrier)
            target = by_class[key]
            # any member of the target class keeps distance zero
            members = [a for a in carrier if cls_of[a] == cls_of[target]]
            table[args] = rng.choice(members)
        funs[f] = table
    rels = {}
    vals = [Fraction(k, 8) for k in range(9)] + [Fraction(1, 3), Fraction(2, 3), Fraction(1, 5)]
    for r in sig.relation_names():
        by_class = {}
        table = {}
        for args in itertools.product(carrier, repeat=sig.relations[r].arity):
            key = tuple(cls_of[a] for a in args)
            if key not in by_class:
                by_class[key] = rng.choice(vals)
            table[args] = by_class[key]
        rels[r] = table
    return PreStructure(sig, carrier, funs, rels, metric)


def admissible_step(structures: Sequence[PreStructure], name: str, i: int, kind: str) -> Optional[Modulus]:
    """Largest step modulus for argument i of a symbol that all structures satisfy:
    delta(eps) = min{ dist : value difference > eps } (capped at 1)."""
    pairs = []  # (difference, distance)
    for M in structures:
        sym = (M.sig.functions if kind == "fun" else M.sig.relations)[name]
        for c, e in itertools.permutations(M.carrier, 2):
            dist = M.metric[(c, e)]
            for rest in itertools.product(M.carrier, repeat=sym.arity - 1):
                x = rest[:i] + (c,) + rest[i:]
                y = rest[:i] + (e,) + rest[i:]
                if kind == "fun":
                    diff = M.metric[(M.fun_tables[name][x], M.fun_tables[name][y])]
                else:
                    diff = M.relation(name, x) - M.relation(name, y)
                if diff > 0:
                    if dist == 0:
                        raise ValueError("value differs across a distance-zero pair")
                    pairs.append((diff, dist))
    if not pairs:
        return None
    diffs = sorted({d for d, _ in pairs})

    def level(k):  # value on [diffs[k-1], diffs[k])
        return min(dist for diff, dist in pairs if diff >= diffs[k])

    # right-continuous steps: a repeated eps is a jump
    pts = [(diffs[0], level(0))]
    for k in range(1, len(diffs)):
        pts += [(diffs[k - 1], level(k)), (diffs[k], level(k))]
    pts.append((diffs[-1], Fraction(1)))
    return Modulus(pts)


def fit_moduli(rng: random.Random, sig: Signature, structures: Sequence[PreStructure]) -> Signature:
    """The signature with every modulus set to min(random PL, admissible step),
    so that all given structures validate."""
    def fitted(name, sym, kind):
        mods = []
        for i in range(sym.arity):
            base = random_modulus(rng)
            step = admissible_step(structures, name, i, kind) if sig.has_metric else None
            mods.append(base if step is None else min_moduli([base, step]))
        return Symbol(sym.arity, tuple(mods))

    rels = {r: fitted(r, s, "rel") for r, s in sig.relations.items()}
    funs = {f: fitted(f, s, "fun") if s.arity else s for f, s in sig.functions.items()}
    return Signature(rels, funs, sig.has_metric)


def validated_structures(rng: random.Random, sig: Signature, count: int, max_size: int = 4,
                         zero_pairs: bool = False) -> Tuple[Signature, List[PreStructure]]:
    raw = [random_structure(rng, sig, rng.randint(1, max_size), zero_pairs) for _ in range(count)]
    fitted = fit_moduli(rng, sig, raw)
    out = [PreStructure(fitted, M.carrier, M.fun_tables, M.rel_tables, M.metric) for M in raw]
    for M in out:
        rep = validate(M)
        if not rep.ok:
            raise AssertionError("generator produced an invalid structure:\n" + rep.text())
    return fitted, out

# ------------------------------------------------------- axiom instances


SCHEMAS = tuple(f"A{i}" for i in range(1, 15))


def _dyadic_below(rng: random.Random, bound: Fraction) -> Optional[Dyadic]:
    """A random dyadic q with 0 <= q < bound."""
    if bound <= 0:
        return None
    n = rng.randint(0, 6)
    while True:
        top = -(-bound * 2 ** n // 1) - 1  # largest k with k/2^n < bound
        top = min(int(top), 2 ** n)
        if top >= 0:
            return Dyadic(rng.randint(0, top), n)
        n += 1


def axiom_instance(rng: random.Random, sig: Signature, schema: str, depth: int = 2,
                   prefix_max: int = 2) -> Formula:
    f = lambda: random_formula(rng, sig, depth)  # noqa: E731
    v = lambda: Var(rng.choice(VARS))  # noqa: E731
    if schema == "A1":
        a, b = f(), f()
        m = Monus(Monus(a, b), a)
    elif schema == "A2":
        a, b, c = f(), f(), f()
        m = Monus(Monus(Monus(c, a), Monus(c, b)), Monus(b, a))
    elif schema == "A3":
        a, b = f(), f()
        m = Monus(Monus(a, Monus(a, b)), Monus(b, Monus(b, a)))
    elif schema == "A4":
        a, b = f(), f()
        m = Monus(Monus(a, b), Monus(Neg(b), Neg(a)))
    elif schema == "A5":
        a = f()
        m = Monus(Half(a), Monus(a, Half(a)))
    elif schema == "A6":
        a = f()
        m = Monus(Monus(a, Half(a)), Half(a))
    elif schema == "A7":
        x, a, b = rng.choice(VARS), f(), f()
        m = Monus(Monus(Sup(x, b), Sup(x, a)), Sup(x, Monus(b, a)))
    elif schema == "A8":
        while True:
            x, a, t = rng.choice(VARS), f(), random_term(rng, sig, 2)
            res = subst_free(a, t, x)
            if res.correct:
                break
        m = Monus(res.formula, Sup(x, a))
    elif schema == "A9":
        while True:
            a = f()
            free = free_vars(a)
            xs = [x for x in VARS if x not in free]
            if xs:
                break
        m = Monus(Sup(rng.choice(xs), a), a)
    elif schema == "A10":
        x = v()
        m = Metric(x, x)
    elif schema == "A11":
        x, y = v(), v()
        m = Monus(Metric(x, y), Metric(y, x))
    elif schema == "A12":
        x, y, z = v(), v(), v()
        m = Monus(Monus(Metric(x, z), Metric(x, y)), Metric(y, z))
    elif schema in ("A13", "A14"):
        m = _continuity_instance(rng, sig, schema)
    else:
        raise ValueError(f"unknown schema {schema}")
    for _ in range(rng.randint(0, prefix_max)):
        m = Sup(rng.choice(VARS), m)
    return m


def _continuity_instance(rng, sig, schema):
    if schema == "A13":
        cands = [(f, s) for f, s in sorted(sig.functions.items()) if s.arity > 0]
    else:
        cands = sorted(sig.relations.items())
        cands = [(r, s) for r, s in cands if s.arity > 0]
    name, sym = rng.choice(cands)
    i = rng.randrange(sym.arity)
    while True:
        r = random_dyadic(rng, 4, positive=True)
        q = _dyadic_below(rng, modulus_sup_below(sym.moduli[i], r.value))
        if q is not None:
            break
    z, w = Var(rng.choice(VARS)), Var(rng.choice(VARS))
    others = [Var(rng.choice(VARS)) for _ in range(sym.arity - 1)]
    la = tuple(others[:i] + [z] + others[i:])
    lb = tuple(others[:i] + [w] + others[i:])
    head = Monus(Const(q), Metric(z, w))
    if schema == "A13":
        body = Monus(Metric(App(name, la), App(name, lb)), Const(r))
    elif name == METRIC:
        body = Monus(Monus(Metric(*la), Metric(*lb)), Const(r))
    else:
        body = Monus(Monus(Atom(name, la), Atom(name, lb)), Const(r))
    return wedge(head, body)

# ---------------------------------------------------------------- proofs


def random_strict_proof(rng: random.Random, max_len: int = 15,
                        atoms: Sequence[str] = ("P", "Q", "R")) -> Tuple[Proof, Formula]:
    """A random strict proof over nullary atoms whose hypotheses are
    Gamma + [psi].  Returns (proof, psi).

    The proof is cut at the step that uses psi most often (counting repeated
    uses along the derivation tree), so the deduction constant is non-trivial.
    """
    sub = lambda d=2: random_prop_formula(rng, atoms, d, consts=False)  # noqa: E731
    psi = sub(1)
    x1, x2, x3 = sub(1), sub(1), sub(1)
    # the last two compound: psi gives x2 -. x1, then x1 gives x2 (two uses)
    gamma = [Monus(x1, psi), Monus(Monus(x2, x1), psi), Monus(Monus(x3, x2), psi), sub(2)]
    rng.shuffle(gamma)
    hyps = gamma + [psi]
    steps: List[Step] = []
    formulas: List[Formula] = []
    uses: List[int] = []

    def add(step, f, u=0):
        steps.append(step)
        formulas.append(f)
        uses.append(u)
        return len(steps) - 1

    def mp(i, j):
        return add(MP(i, j), formulas[j].left, uses[i] + uses[j])

    add(Hyp(len(hyps) - 1), psi, 1)
    for k in rng.sample(range(len(gamma)), rng.randint(1, len(gamma))):
        add(Hyp(k), hyps[k])
    while len(steps) < max_len - 1:
        pairs = [(i, j) for j, fj in enumerate(formulas) if isinstance(fj, Monus)
                 for i, fi in enumerate(formulas) if fj.right == fi and fj.left not in formulas]
        if pairs and rng.random() < 0.7:
            i, j = rng.choice(pairs)
            mp(i, j)
            continue
        # favour formulas that already depend on psi
        weights = [1 + 3 * u for u in uses]
        i = rng.choices(range(len(formulas)), weights)[0]
        fi = formulas[i]
        choice = rng.random()
        if choice < 0.4:
            ax = Monus(Monus(fi, sub(1)), fi)  # A1
        elif choice < 0.6 and isinstance(fi, Half):
            ax = Monus(Monus(fi.body, fi), fi)  # A6
        elif choice < 0.7 and isinstance(fi, Monus) and isinstance(fi.left, Neg) and isinstance(fi.right, Neg):
            ax = Monus(Monus(fi.right.body, fi.left.body), fi)  # A4
        elif choice < 0.8 and isinstance(fi, Monus) and isinstance(fi.right, Monus) and fi.right.left == fi.left:
            b, a = fi.left, fi.right.right
            ax = Monus(Monus(a, Monus(a, b)), fi)  # A3
        elif choice < 0.9:
            # a hypothesis-free bridge: (X -. fi) from A1 needs X -. fi's own minor,
            # so use the reusable psi hypothesis instead
            add(Hyp(len(hyps) - 1), psi, 1)
            continue
        else:
            ax = Monus(Half(fi), Monus(fi, Half(fi)))  # A5, standalone
            add(Ax(ax), ax)
            continue
        j = add(Ax(ax), ax)
        mp(i, j)
    best = max(range(len(steps)), key=lambda k: (uses[k], k))
    return Proof(hyps, steps[:best + 1]), psi
