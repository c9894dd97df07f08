"""Free and bound substitution, renaming apart, constant substitution."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Set

from .syntax import (
    App, Atom, Const, Formula, Half, Metric, Monus, Neg, Sup, Term, Var,
    all_vars, fresh_var, free_vars, term_vars,
)


@dataclass(frozen=True)
class SubstResult:
    formula: Formula
    correct: bool


def subst_term(s: Term, t: Term, x: str) -> Term:
    if isinstance(s, Var):
        return t if s.name == x else s
    if not s.args:
        return s
    return App(s.fn, tuple(subst_term(a, t, x) for a in s.args))


def subst_free(phi: Formula, t: Term, x: str) -> SubstResult:
    """phi[t/x]; ``correct`` is False when a variable of t gets captured."""
    tv = term_vars(t)
    captured = False

    def go(f: Formula, binders: frozenset) -> Formula:
        nonlocal captured
        if isinstance(f, Atom):
            if not any(x in term_vars(a) for a in f.args):
                return f
            if binders & tv:
                captured = True
            return Atom(f.pred, tuple(subst_term(a, t, x) for a in f.args))
        if isinstance(f, Metric):
            if x not in term_vars(f.left) | term_vars(f.right):
                return f
            if binders & tv:
                captured = True
            return Metric(subst_term(f.left, t, x), subst_term(f.right, t, x))
        if isinstance(f, Const):
            return f
        if isinstance(f, Monus):
            return Monus(go(f.left, binders), go(f.right, binders))
        if isinstance(f, Neg):
            return Neg(go(f.body, binders))
        if isinstance(f, Half):
            return Half(go(f.body, binders))
        if isinstance(f, Sup):
            if f.var == x:
                return f
            return Sup(f.var, go(f.body, binders | {f.var}))
        raise TypeError(f"not a core formula: {f!r}")

    out = go(phi, frozenset())
    return SubstResult(out, not captured)


def subst_bound(phi: Formula, y: str, x: str) -> SubstResult:
    """phi{y/x}: every ``sup x . a`` becomes ``sup y . a[y/x]``."""
    ok = True

    def go(f: Formula) -> Formula:
        nonlocal ok
        if isinstance(f, (Atom, Metric, Const)):
            return f
        if isinstance(f, Monus):
            return Monus(go(f.left), go(f.right))
        if isinstance(f, Neg):
            return Neg(go(f.body))
        if isinstance(f, Half):
            return Half(go(f.body))
        if isinstance(f, Sup):
            body = go(f.body)
            if f.var != x:
                return Sup(f.var, body)
            if y != x and y in free_vars(body):
                ok = False
            res = subst_free(body, Var(y), x)
            ok = ok and res.correct
            return Sup(y, res.formula)
        raise TypeError(f"not a core formula: {f!r}")

    out = go(phi)
    return SubstResult(out, ok)


def rename_apart(phi: Formula, xs: Sequence[str]) -> Formula:
    """An equivalent formula in which no variable of xs is bound.

    Every binder over a listed variable is renamed to the least fresh ``v<k>``.
    """
    targets = set(xs)
    used: Set[str] = all_vars(phi) | targets

    def go(f: Formula) -> Formula:
        if isinstance(f, (Atom, Metric, Const)):
            return f
        if isinstance(f, Monus):
            return Monus(go(f.left), go(f.right))
        if isinstance(f, Neg):
            return Neg(go(f.body))
        if isinstance(f, Half):
            return Half(go(f.body))
        if isinstance(f, Sup):
            if f.var not in targets:
                return Sup(f.var, go(f.body))
            z = fresh_var(used)
            used.add(z)
            res = subst_free(f.body, Var(z), f.var)
            assert res.correct
            return Sup(z, go(res.formula))
        raise TypeError(f"not a core formula: {f!r}")

    return go(phi)


def _replace_const_term(s: Term, c: str, x: str) -> Term:
    if isinstance(s, Var):
        return s
    if s.fn == c and not s.args:
        return Var(x)
    return App(s.fn, tuple(_replace_const_term(a, c, x) for a in s.args))


def subst_const(phi: Formula, x: str, c: str) -> Formula:
    """phi[x/c]: replace the constant symbol c by the variable x.

    Requires that x does not occur in phi at all.
    """
    if x in all_vars(phi):
        raise ValueError(f"variable {x!r} occurs in the formula")

    def go(f: Formula) -> Formula:
        if isinstance(f, Atom):
            return Atom(f.pred, tuple(_replace_const_term(a, c, x) for a in f.args))
        if isinstance(f, Metric):
            return Metric(_replace_const_term(f.left, c, x), _replace_const_term(f.right, c, x))
        if isinstance(f, Const):
            return f
        if isinstance(f, Monus):
            return Monus(go(f.left), go(f.right))
        if isinstance(f, Neg):
            return Neg(go(f.body))
        if isinstance(f, Half):
            return Half(go(f.body))
        if isinstance(f, Sup):
            return Sup(f.var, go(f.body))
        raise TypeError(f"not a core formula: {f!r}")

    return go(phi)
