"""Axiom recognition, proof checking and proof transformations.

Strict proofs use hypotheses, instances of (A1)-(A14) (and their
generalizations) and modus ponens.  Extended proofs may also contain ``Taut``
steps: a finite propositional consequence, decided exactly after abstracting
atoms and quantified subformulas to propositional variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import prop
from .numerics import modulus_sup_below
from .subst import subst_free
from .syntax import (
    METRIC, App, Atom, Const, Formula, Half, Metric, Monus, Neg, Signature, Sup,
    Term, Var, free_vars, monus_n, strip_generalization,
)

# ------------------------------------------------------------- proofs


@dataclass(frozen=True)
class Hyp:
    index: int


@dataclass(frozen=True)
class Ax:
    formula: Formula


@dataclass(frozen=True)
class MP:
    """From step ``minor`` (phi) and step ``major`` (psi -. phi) conclude psi."""
    minor: int
    major: int


@dataclass(frozen=True)
class Taut:
    premises: Tuple[int, ...]
    formula: Formula

    def __init__(self, premises, formula):
        object.__setattr__(self, "premises", tuple(premises))
        object.__setattr__(self, "formula", formula)


Step = Union[Hyp, Ax, MP, Taut]


@dataclass(frozen=True)
class Proof:
    hypotheses: Tuple[Formula, ...]
    steps: Tuple[Step, ...]

    def __init__(self, hypotheses, steps):
        object.__setattr__(self, "hypotheses", tuple(hypotheses))
        object.__setattr__(self, "steps", tuple(steps))

    def conclusions(self) -> List[Optional[Formula]]:
        """Formula proved at each step (None where an MP step is ill-shaped)."""
        out: List[Optional[Formula]] = []
        for s in self.steps:
            out.append(_conclusion(s, self.hypotheses, out))
        return out

    @property
    def conclusion(self) -> Optional[Formula]:
        return self.conclusions()[-1] if self.steps else None


def _conclusion(s: Step, hyps, prev) -> Optional[Formula]:
    if isinstance(s, Hyp):
        return hyps[s.index] if 0 <= s.index < len(hyps) else None
    if isinstance(s, (Ax, Taut)):
        return s.formula
    if not (0 <= s.minor < len(prev) and 0 <= s.major < len(prev)):
        return None
    minor, major = prev[s.minor], prev[s.major]
    if minor is None or not isinstance(major, Monus) or major.right != minor:
        return None
    return major.left

# ------------------------------------------------------------ matching


@dataclass(frozen=True)
class AxiomMatch:
    schema: str
    bindings: Dict[str, object]
    prefix: Tuple[str, ...]

    def __hash__(self):
        return hash((self.schema, self.prefix))


def _is_var(t) -> bool:
    return isinstance(t, Var)


def _dyadic_const(phi) -> bool:
    return isinstance(phi, Const)


def _wedge_parts(phi) -> Optional[Tuple[Formula, Formula]]:
    # a /\ b is a -. (a -. b)
    if isinstance(phi, Monus) and isinstance(phi.right, Monus) and phi.right.left == phi.left:
        return phi.left, phi.right.right
    return None


def _m(phi):
    return (phi.left, phi.right) if isinstance(phi, Monus) else None


def _a1(m):
    p = _m(m)
    if p and _m(p[0]) and p[0].left == p[1]:
        return {"phi": p[1], "psi": p[0].right}


def _a2(m):
    p = _m(m)
    if not p:
        return None
    l, r = p
    if not (_m(l) and _m(r) and _m(l.left) and _m(l.right)):
        return None
    (c1, a1), (c2, b1), (b2, a2) = _m(l.left), _m(l.right), _m(r)
    if c1 == c2 and a1 == a2 and b1 == b2:
        return {"phi": a1, "psi": b1, "chi": c1}


def _a3(m):
    p = _m(m)
    if not p:
        return None
    l, r = p
    if not (_m(l) and _m(r) and _m(l.right) and _m(r.right)):
        return None
    a, (a2, b) = l.left, _m(l.right)
    b2, (b3, a3) = r.left, _m(r.right)
    if a == a2 == a3 and b == b2 == b3:
        return {"phi": a, "psi": b}


def _a4(m):
    p = _m(m)
    if not p:
        return None
    l, r = p
    if not (_m(l) and _m(r) and isinstance(r.left, Neg) and isinstance(r.right, Neg)):
        return None
    if r.left.body == l.right and r.right.body == l.left:
        return {"phi": l.left, "psi": l.right}


def _a5(m):
    p = _m(m)
    if p and isinstance(p[0], Half) and _m(p[1]) and isinstance(p[1].right, Half):
        a = p[0].body
        if p[1].left == a and p[1].right.body == a:
            return {"phi": a}


def _a6(m):
    p = _m(m)
    if p and _m(p[0]) and isinstance(p[0].right, Half) and isinstance(p[1], Half):
        a = p[0].left
        if p[0].right.body == a and p[1].body == a:
            return {"phi": a}


def _a7(m):
    p = _m(m)
    if not p:
        return None
    l, r = p
    if not (_m(l) and isinstance(l.left, Sup) and isinstance(l.right, Sup) and isinstance(r, Sup)):
        return None
    x = l.left.var
    if l.right.var != x or r.var != x or not _m(r.body):
        return None
    if r.body.left == l.left.body and r.body.right == l.right.body:
        return {"x": x, "psi": l.left.body, "phi": l.right.body}


class _Unify:
    __slots__ = ("t", "ok")

    def __init__(self):
        self.t = None
        self.ok = True


def _unify_term(s: Term, u: Term, x: str, bound: frozenset, st: _Unify) -> None:
    if not st.ok:
        return
    if isinstance(s, Var):
        if s.name == x and x not in bound:
            if st.t is None:
                st.t = u
            elif st.t != u:
                st.ok = False
        elif s != u:
            st.ok = False
        return
    if not isinstance(u, App) or u.fn != s.fn or len(u.args) != len(s.args):
        st.ok = False
        return
    for a, b in zip(s.args, u.args):
        _unify_term(a, b, x, bound, st)


def _unify(f: Formula, g: Formula, x: str, bound: frozenset, st: _Unify) -> None:
    """Find t with f[t/x] == g (structure only; the caller re-checks)."""
    if not st.ok:
        return
    if type(f) is not type(g):
        st.ok = False
        return
    if isinstance(f, Atom):
        if f.pred != g.pred or len(f.args) != len(g.args):
            st.ok = False
            return
        for a, b in zip(f.args, g.args):
            _unify_term(a, b, x, bound, st)
    elif isinstance(f, Metric):
        _unify_term(f.left, g.left, x, bound, st)
        _unify_term(f.right, g.right, x, bound, st)
    elif isinstance(f, Const):
        st.ok = f == g
    elif isinstance(f, Monus):
        _unify(f.left, g.left, x, bound, st)
        _unify(f.right, g.right, x, bound, st)
    elif isinstance(f, (Neg, Half)):
        _unify(f.body, g.body, x, bound, st)
    elif isinstance(f, Sup):
        if f.var != g.var:
            st.ok = False
            return
        _unify(f.body, g.body, x, bound | {f.var}, st)


def _a8(m):
    p = _m(m)
    if not p or not isinstance(p[1], Sup):
        return None
    inst, (x, body) = p[0], (p[1].var, p[1].body)
    st = _Unify()
    _unify(body, inst, x, frozenset(), st)
    if not st.ok:
        return None
    t = st.t if st.t is not None else Var(x)
    res = subst_free(body, t, x)
    if res.correct and res.formula == inst:
        return {"x": x, "phi": body, "t": t}


def _a9(m):
    p = _m(m)
    if p and isinstance(p[0], Sup) and p[0].body == p[1] and p[0].var not in free_vars(p[1]):
        return {"x": p[0].var, "phi": p[1]}


def _d(phi) -> Optional[Tuple[Term, Term]]:
    return (phi.left, phi.right) if isinstance(phi, Metric) else None


def _a10(m):
    if isinstance(m, Metric) and _is_var(m.left) and m.left == m.right:
        return {"x": m.left}


def _a11(m):
    p = _m(m)
    if p and _d(p[0]) and _d(p[1]):
        (x, y), (y2, x2) = _d(p[0]), _d(p[1])
        if all(map(_is_var, (x, y))) and x == x2 and y == y2:
            return {"x": x, "y": y}


def _a12(m):
    p = _m(m)
    if not p or not _m(p[0]) or not _d(p[1]):
        return None
    l = p[0]
    if not (_d(l.left) and _d(l.right)):
        return None
    (x, z), (x2, y), (y2, z2) = _d(l.left), _d(l.right), _d(p[1])
    if all(map(_is_var, (x, y, z))) and x == x2 and y == y2 and z == z2:
        return {"x": x, "y": y, "z": z}


def _position_split(left: Sequence[Term], right: Sequence[Term], z, w) -> List[int]:
    """Positions i with left[i]=z, right[i]=w and the other arguments equal."""
    if len(left) != len(right) or not all(map(_is_var, list(left) + list(right))):
        return []
    out = []
    for i in range(len(left)):
        if left[i] == z and right[i] == w and all(left[j] == right[j] for j in range(len(left)) if j != i):
            out.append(i)
    return out


def _continuity_head(w1):
    """(q, z, w) from a conjunct ``q -. d(z,w)``."""
    p = _m(w1)
    if p and _dyadic_const(p[0]) and _d(p[1]):
        z, w = _d(p[1])
        if _is_var(z) and _is_var(w):
            return p[0].value, z, w
    return None


def _continuity_ok(sym_moduli, i, q, r) -> bool:
    rv = r.value
    if rv <= 0:
        return False
    return q.value < modulus_sup_below(sym_moduli[i], rv)


def _a13(m, sig):
    parts = _wedge_parts(m)
    if not parts:
        return None
    head = _continuity_head(parts[0])
    p = _m(parts[1])
    if not head or not p or not _dyadic_const(p[1]) or not _d(p[0]):
        return None
    q, z, w = head
    r = p[1].value
    fl, fr = _d(p[0])
    if not (isinstance(fl, App) and isinstance(fr, App) and fl.fn == fr.fn):
        return None
    sym = sig.functions.get(fl.fn) if sig is not None else None
    if sig is not None and (sym is None or sym.arity != len(fl.args)):
        return None
    moduli = sym.moduli if sym is not None else _identity_moduli(len(fl.args))
    for i in _position_split(fl.args, fr.args, z, w):
        if _continuity_ok(moduli, i, q, r):
            return {"f": fl.fn, "i": i, "z": z, "w": w, "q": q, "r": r, "args": fl.args}


def _a14(m, sig):
    parts = _wedge_parts(m)
    if not parts:
        return None
    head = _continuity_head(parts[0])
    p = _m(parts[1])
    if not head or not p or not _dyadic_const(p[1]) or not _m(p[0]):
        return None
    q, z, w = head
    r = p[1].value
    a, b = p[0].left, p[0].right
    if isinstance(a, Atom) and isinstance(b, Atom) and a.pred == b.pred:
        name, la, lb = a.pred, a.args, b.args
    elif isinstance(a, Metric) and isinstance(b, Metric):
        name, la, lb = METRIC, (a.left, a.right), (b.left, b.right)
    else:
        return None
    sym = sig.relations.get(name) if sig is not None else None
    if sig is not None and (sym is None or sym.arity != len(la)):
        return None
    moduli = sym.moduli if sym is not None else _identity_moduli(len(la))
    for i in _position_split(la, lb, z, w):
        if _continuity_ok(moduli, i, q, r):
            return {"P": name, "i": i, "z": z, "w": w, "q": q, "r": r, "args": la}


def _identity_moduli(n):
    from .numerics import Modulus
    return tuple(Modulus.identity() for _ in range(n))


_PROP_SCHEMAS = [("A1", _a1), ("A2", _a2), ("A3", _a3), ("A4", _a4), ("A5", _a5), ("A6", _a6)]
_QUANT_SCHEMAS = [("A7", _a7), ("A8", _a8), ("A9", _a9)]
_METRIC_SCHEMAS = [("A10", _a10), ("A11", _a11), ("A12", _a12)]


def match_axiom(phi: Formula, sig: Optional[Signature] = None) -> Optional[AxiomMatch]:
    """First schema among A1..A14 that phi (after its sup-prefix) instantiates.

    Without a signature the metric schemas are allowed and every argument
    gets the identity modulus.
    """
    matrix, prefix = strip_generalization(phi)
    for name, fn in _PROP_SCHEMAS + _QUANT_SCHEMAS:
        b = fn(matrix)
        if b is not None:
            return AxiomMatch(name, b, tuple(prefix))
    if sig is not None and not sig.has_metric:
        return None
    for name, fn in _METRIC_SCHEMAS:
        b = fn(matrix)
        if b is not None:
            return AxiomMatch(name, b, tuple(prefix))
    for name, fn in (("A13", _a13), ("A14", _a14)):
        b = fn(matrix, sig)
        if b is not None:
            return AxiomMatch(name, b, tuple(prefix))
    return None

# ------------------------------------------------------------ checking


@dataclass(frozen=True)
class StepReport:
    index: int
    ok: bool
    rule: str
    formula: Optional[Formula]
    reason: str = ""


@dataclass
class Verdict:
    accepted: bool
    steps: List[StepReport]
    conclusion: Optional[Formula]
    first_error: Optional[StepReport] = None


MODES = ("strict", "extended")


def taut_holds(premises: Sequence[Formula], formula: Formula) -> bool:
    """The extended-mode rule: propositional consequence after abstraction.
    Without premises the conclusion's generalization prefix is ignored."""
    if not premises:
        formula = strip_generalization(formula)[0]
    premises = list(premises)
    # Fast path: treat repeated subformulas as atoms.  A consequence under
    # this coarser abstraction is a substitution instance, hence sound.
    coarse = repeated_subformulas(premises + [formula])
    if coarse and prop.abstract_consequence(premises, formula, coarse):
        return True
    return prop.abstract_consequence(premises, formula)


def repeated_subformulas(formulas: Sequence[Formula]) -> frozenset:
    """Outermost compound subformulas occurring more than once."""
    count: Dict[Formula, int] = {}
    for root in formulas:
        stack = [root]
        while stack:
            f = stack.pop()
            count[f] = count.get(f, 0) + 1
            stack.extend(_children(f))
    out = set()
    for root in formulas:
        stack = [root]
        while stack:
            f = stack.pop()
            if count[f] > 1 and _children(f):
                out.add(f)
            else:
                stack.extend(_children(f))
    return frozenset(out)


def _children(f: Formula) -> tuple:
    if isinstance(f, Monus):
        return (f.left, f.right)
    if isinstance(f, (Neg, Half)):
        return (f.body,)
    return ()


def check_proof(proof: Proof, mode: str = "strict", sig: Optional[Signature] = None) -> Verdict:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    reports: List[StepReport] = []
    concl: List[Optional[Formula]] = []
    good: List[bool] = []
    hyps = proof.hypotheses
    for k, s in enumerate(proof.steps):
        f: Optional[Formula] = None
        ok, reason, rule = True, "", type(s).__name__.lower()
        if isinstance(s, Hyp):
            if 0 <= s.index < len(hyps):
                f = hyps[s.index]
            else:
                ok, reason = False, f"no hypothesis {s.index}"
        elif isinstance(s, Ax):
            f = s.formula
            ok, reason = _well_formed(f, sig)
            if ok:
                m = match_axiom(f, sig)
                if m is None:
                    ok, reason = False, "not an instance of any axiom schema"
                else:
                    rule = f"ax {m.schema}"
        elif isinstance(s, MP):
            refs = (s.minor, s.major)
            if any(not 0 <= r < k for r in refs):
                ok, reason = False, "reference to a later or missing step"
            elif not (good[s.minor] and good[s.major]):
                ok, reason = False, "depends on a failed step"
                f = _conclusion(s, hyps, concl)
            else:
                f = _conclusion(s, hyps, concl)
                if f is None:
                    ok, reason = False, f"step {s.major} is not of the form X -. (step {s.minor})"
        elif isinstance(s, Taut):
            f = s.formula
            if mode == "strict":
                ok, reason = False, "taut steps are not allowed in strict mode"
            elif any(not 0 <= r < k for r in s.premises):
                ok, reason = False, "reference to a later or missing step"
            elif not all(good[r] for r in s.premises):
                ok, reason = False, "depends on a failed step"
            else:
                ok, reason = _well_formed(f, sig)
                if ok and not taut_holds([concl[r] for r in s.premises], f):
                    ok, reason = False, "not a propositional consequence of its premises"
        else:
            raise TypeError(f"unknown step {s!r}")
        concl.append(f)
        good.append(ok)
        reports.append(StepReport(k, ok, rule, f, reason))
    first = next((r for r in reports if not r.ok), None)
    accepted = first is None and bool(reports)
    if not reports:
        first = None
    return Verdict(accepted, reports, concl[-1] if concl else None, first)


def _well_formed(f: Formula, sig: Optional[Signature]) -> Tuple[bool, str]:
    if sig is None:
        return True, ""
    try:
        sig.check_formula(f)
    except ValueError as e:
        return False, str(e)
    return True, ""

# ----------------------------------------------------- transformations


class _Builder:
    def __init__(self, hyps):
        self.hyps = list(hyps)
        self.steps: List[Step] = []
        self.formulas: List[Formula] = []
        self.index: Dict[Tuple[str, Formula], int] = {}

    def add(self, step: Step, formula: Formula) -> int:
        key = (type(step).__name__, formula)
        if not isinstance(step, MP) and key in self.index:
            return self.index[key]
        self.steps.append(step)
        self.formulas.append(formula)
        k = len(self.steps) - 1
        if not isinstance(step, MP):
            self.index[key] = k
        return k

    def mp(self, minor: int, major: int) -> int:
        f = self.formulas[major]
        assert isinstance(f, Monus) and f.right == self.formulas[minor]
        return self.add(MP(minor, major), f.left)

    def proof(self) -> Proof:
        return Proof(self.hyps, self.steps)


def _ancestors(proof: Proof) -> List[int]:
    """Indices of steps the last step depends on, in order."""
    need = {len(proof.steps) - 1}
    for k in range(len(proof.steps) - 1, -1, -1):
        if k not in need:
            continue
        s = proof.steps[k]
        if isinstance(s, MP):
            need.update((s.minor, s.major))
        elif isinstance(s, Taut):
            need.update(s.premises)
    return sorted(need)


def _require_valid(proof: Proof, sig) -> List[Formula]:
    mode = "extended" if any(isinstance(s, Taut) for s in proof.steps) else "strict"
    v = check_proof(proof, mode, sig)
    if not v.accepted:
        err = v.first_error
        where = f" at step {err.index}: {err.reason}" if err else ""
        raise ValueError(f"input proof does not check{where}")
    return [r.formula for r in v.steps]


MAX_N = 64


def deduction_transform(proof: Proof, psi: Formula, sig: Optional[Signature] = None) -> Tuple[int, Proof]:
    """From a proof of phi from Gamma + {psi}, build (n, proof of phi -.n psi from Gamma)."""
    formulas = _require_valid(proof, sig)
    keep = [i for i, h in enumerate(proof.hypotheses) if h != psi]
    remap = {old: new for new, old in enumerate(keep)}
    out = _Builder([proof.hypotheses[i] for i in keep])
    done: Dict[int, Tuple[int, int]] = {}  # step -> (n, index of step -.n psi)
    for k in _ancestors(proof):
        s, f = proof.steps[k], formulas[k]
        if isinstance(s, Hyp):
            if proof.hypotheses[s.index] == psi:
                done[k] = (1, out.add(Taut((), Monus(psi, psi)), Monus(psi, psi)))
            else:
                done[k] = (0, out.add(Hyp(remap[s.index]), f))
        elif isinstance(s, Ax):
            done[k] = (0, out.add(Ax(f), f))
        elif isinstance(s, MP):
            n1, a = done[s.minor]
            n2, b = done[s.major]
            n = n1 + n2
            target = monus_n(f, n, psi)
            taut = Monus(Monus(target, out.formulas[b]), out.formulas[a])
            t = out.add(Taut((), taut), taut)
            done[k] = (n, out.mp(b, out.mp(a, t)))
        elif isinstance(s, Taut):
            if not s.premises:
                done[k] = (0, out.add(Taut((), f), f))
                continue
            prem = [done[j] for j in s.premises]
            shifted = [out.formulas[i] for _, i in prem]
            for n in range(MAX_N + 1):
                goal = monus_n(f, n, psi)
                if taut_holds(shifted, goal):
                    break
            else:
                raise ValueError(f"no n <= {MAX_N} makes the shifted taut step valid")
            done[k] = (n, out.add(Taut(tuple(i for _, i in prem), goal), goal))
    n, last = done[len(proof.steps) - 1]
    if last != len(out.steps) - 1:
        # the final formula was produced earlier (shared step); restate it
        out.steps.append(out.steps[last])
        out.formulas.append(out.formulas[last])
    return n, out.proof()


def undo_deduction(proof: Proof, psi: Formula, n: int, sig: Optional[Signature] = None) -> Proof:
    """From a proof of phi -.n psi from Gamma, a proof of phi from Gamma + {psi}
    by n modus ponens steps."""
    formulas = _require_valid(proof, sig)
    out = _Builder(list(proof.hypotheses) + [psi])
    out.steps = list(proof.steps)
    out.formulas = list(formulas)
    h = len(out.steps)
    out.steps.append(Hyp(len(proof.hypotheses)))
    out.formulas.append(psi)
    cur = h - 1
    for _ in range(n):
        cur = out.mp(h, cur)
    return out.proof()


def generalize_transform(proof: Proof, x: str, sig: Optional[Signature] = None) -> Proof:
    """From a proof of phi from Gamma, a proof of sup x . phi from Gamma,
    provided x is not free in any hypothesis the proof uses."""
    formulas = _require_valid(proof, sig)
    used = _ancestors(proof)
    for k in used:
        s = proof.steps[k]
        if isinstance(s, Hyp) and x in free_vars(proof.hypotheses[s.index]):
            raise ValueError(f"variable {x} is free in the used hypothesis {s.index}")
    out = _Builder(proof.hypotheses)
    done: Dict[int, int] = {}

    def sup(f):
        return Sup(x, f)

    def peel(big: int, small: int) -> int:
        # from sup x (Y -. P) and sup x P conclude sup x Y
        body = out.formulas[big].body
        a7 = Monus(Monus(sup(body.left), sup(body.right)), sup(body))
        return out.mp(small, out.mp(big, out.add(Ax(a7), a7)))

    for k in used:
        s, f = proof.steps[k], formulas[k]
        if isinstance(s, Hyp):
            h = out.add(Hyp(s.index), f)
            a9 = Monus(sup(f), f)
            done[k] = out.mp(h, out.add(Ax(a9), a9))
        elif isinstance(s, Ax):
            done[k] = out.add(Ax(sup(f)), sup(f))
        elif isinstance(s, MP):
            done[k] = peel(done[s.major], done[s.minor])
        elif isinstance(s, Taut):
            if not s.premises:
                done[k] = out.add(Taut((), sup(f)), sup(f))
                continue
            prem = [formulas[j] for j in s.premises]
            for n in range(MAX_N + 1):
                chain = f
                for p in prem:
                    chain = monus_n(chain, n, p)
                if taut_holds([], chain):
                    break
            else:
                raise ValueError(f"no n <= {MAX_N} turns the taut step into a tautology")
            cur = out.add(Taut((), sup(chain)), sup(chain))
            for j in reversed(s.premises):
                for _ in range(n):
                    cur = peel(cur, done[j])
            done[k] = cur
    last = done[len(proof.steps) - 1]
    if last != len(out.steps) - 1:
        out.steps.append(out.steps[last])
        out.formulas.append(out.formulas[last])
    return out.proof()

# ------------------------------------------------------------- degrees


def degree_of_provability_upper(sigma: Sequence[Formula], phi: Formula, p) -> Optional[Proof]:
    """A one-taut-step extended proof of phi -. p from sigma when the degree
    of truth of phi over sigma is at most p; otherwise None."""
    from .numerics import Dyadic
    p = Dyadic.of(p)
    g = prop.degree_of_truth(list(sigma), phi)
    if not isinstance(g, prop.Unsat) and g > p.value:
        return None
    steps: List[Step] = [Hyp(i) for i in range(len(sigma))]
    steps.append(Taut(tuple(range(len(sigma))), Monus(phi, Const(p))))
    return Proof(tuple(sigma), tuple(steps))


def refutation_proof(sigma: Sequence[Formula]) -> Optional[Proof]:
    """For an unsatisfiable finite sigma, an extended proof of #1 from it."""
    if not isinstance(prop.decide_satisfiability(list(sigma)), prop.Unsat):
        return None
    steps: List[Step] = [Hyp(i) for i in range(len(sigma))]
    steps.append(Taut(tuple(range(len(sigma))), Const(1)))
    return Proof(tuple(sigma), tuple(steps))
