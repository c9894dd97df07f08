import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from cfol.generators import VARS, random_formula, random_signature, random_term, validated_structures
from cfol.semantics import Assignment, eval as ev, eval_term
from cfol.subst import rename_apart, subst_bound, subst_const, subst_free
from cfol.syntax import App, Atom, Const, Monus, Sup, Var, all_vars, free_vars, subformulas, term_vars

x, y = Var("x"), Var("y")
fy = App("f", (y,))


def P(*args):
    return Atom("P", tuple(args))


def pair(res):
    return res.formula, res.correct


def test_subst_free():
    assert pair(subst_free(P(x), fy, "x")) == (P(fy), True)
    res = subst_free(Sup("y", P(x, y)), fy, "x")
    assert res.formula == Sup("y", P(fy, y)) and not res.correct
    assert pair(subst_free(Sup("x", P(x)), fy, "x")) == (Sup("x", P(x)), True)


def test_subst_free_capture_only_where_substituted():
    # y is bound, but x does not occur under that binder: still correct
    phi = Monus(P(x), Sup("y", P(y)))
    assert pair(subst_free(phi, fy, "x")) == (Monus(P(fy), Sup("y", P(y))), True)


def test_subst_bound():
    assert pair(subst_bound(Sup("x", P(x)), "y", "x")) == (Sup("y", P(y)), True)
    res = subst_bound(Sup("x", P(x, y)), "y", "x")
    assert res.formula == Sup("y", P(y, y)) and not res.correct
    assert pair(subst_bound(P(x), "y", "x")) == (P(x), True)


def test_rename_apart():
    out = rename_apart(Sup("x", P(x)), ["x"])
    assert isinstance(out, Sup) and out.var not in ("x",)
    assert out.body == P(Var(out.var))
    assert rename_apart(P(x), ["x"]) == P(x)
    Q = Sup("x", Sup("y", Atom("Q", (x, y))))
    r = rename_apart(Q, ["x", "y"])
    a, b = r.var, r.body.var
    assert {a, b}.isdisjoint({"x", "y"}) and a != b
    assert r.body.body == Atom("Q", (Var(a), Var(b)))


def test_subst_const():
    c = App("c")
    assert subst_const(P(c), "x", "c") == P(x)
    assert subst_const(Sup("y", Atom("Q", (c, y))), "x", "c") == Sup("y", Atom("Q", (x, y)))
    assert subst_const(Monus(P(c), Const(F(1, 4))), "x", "c") == Monus(P(x), Const(F(1, 4)))
    with pytest.raises(ValueError):
        subst_const(Monus(P(c), P(x)), "x", "c")


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False))
def test_substitution_lemma(rng):
    sig = random_signature(rng)
    _, ms = validated_structures(rng, sig, 2, 3)
    phi = random_formula(rng, sig, 3)
    t = random_term(rng, sig, 2)
    v = rng.choice(VARS)
    phi = rename_apart(phi, sorted(term_vars(t)))
    res = subst_free(phi, t, v)
    assert res.correct
    for M in ms:
        s = Assignment(M.carrier[0], {z: rng.choice(M.carrier) for z in VARS})
        assert ev(M, s, res.formula) == ev(M, s.updated(v, eval_term(M, s, t)), phi)


def test_rename_apart_preserves_value():
    rng = random.Random(3)
    for _ in range(10):
        sig = random_signature(rng)
        _, ms = validated_structures(rng, sig, 2, 3)
        phi = random_formula(rng, sig, 4)
        out = rename_apart(phi, list(VARS))
        assert not any(isinstance(n, Sup) and n.var in VARS for n in subformulas(out))
        assert free_vars(out) == free_vars(phi)
        for M in ms:
            s = Assignment(M.carrier[-1], {"x": M.carrier[0]})
            assert ev(M, s, out) == ev(M, s, phi)
        assert all_vars(out) >= free_vars(phi)
