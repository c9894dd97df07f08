import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from oracles import enumerate_formulas, grid_max, peval, vertex_max
from cfol.parser import parse_formula as pf
from cfol.prop import (
    CounterModel, Holds, Model, Unsat, Valid, abstract_consequence, decide_consequence,
    decide_satisfiability, decide_validity, degree_of_truth, eval_prop, format_valuation,
)
from cfol.syntax import Atom, Const, Half, Monus, Neg

P, Q = Atom("P"), Atom("Q")


def test_eval_prop():
    v = {"P": F(3, 10), "Q": F(1, 2)}
    assert eval_prop(v, Monus(P, Q)) == 0
    assert eval_prop(v, Neg(P)) == F(7, 10)
    assert eval_prop(v, Half(P)) == F(3, 20)
    with pytest.raises(ValueError):
        eval_prop(v, pf("sup x . P(x)"))


def test_validity_examples():
    assert decide_validity(pf("(P -. (P -. Q)) -. (Q -. (Q -. P))")) == Valid()
    assert decide_validity(pf("P -. P")) == Valid()
    res = decide_validity(pf("P -. #1/2^1"))
    assert isinstance(res, CounterModel)
    assert res.valuation == {"P": F(1)} and res.value == F(1, 2)


def test_consequence_examples():
    assert decide_consequence([P], P) == Holds()
    sigma = [pf("P -. #1/2^3"), pf("P -. #1/2^1"), pf("P -. #1/2^2")]
    res = decide_consequence(sigma, P)
    assert isinstance(res, CounterModel) and res.valuation["P"] == F(1, 8)
    assert degree_of_truth(sigma, P) == F(1, 8)
    pinned = [pf("#1/2^1 -. P"), pf("P -. #1/2^1")]
    assert decide_consequence(pinned, pf("|P - #1/2^1|")) == Holds()


def test_degree_examples():
    assert degree_of_truth([pf("P -. #1/2^1")], P) == F(1, 2)
    assert degree_of_truth([], P) == 1
    assert degree_of_truth([pf("#1/2^2 -. P"), pf("P -. #1/2^2")], Neg(P)) == F(3, 4)
    assert degree_of_truth([pf("#1/2^1 -. P"), pf("P -. #1/2^2")], P) == Unsat()


def test_satisfiability_examples():
    res = decide_satisfiability([pf("P -. Q")])
    assert isinstance(res, Model) and eval_prop(res.valuation, pf("P -. Q")) == 0
    assert decide_satisfiability([pf("#1/2^1 -. P"), pf("P -. #1/2^2")]) == Unsat()
    assert decide_satisfiability([Neg(P)]) == Model({"P": F(1)})


def test_modes():
    with pytest.raises(ValueError):
        decide_validity(Half(P), mode="lukasiewicz")
    with pytest.raises(ValueError):
        decide_validity(P, mode="godel")
    assert decide_validity(pf("P -. P"), mode="lukasiewicz") == Valid()
    # only the truth-value constants belong to the Lukasiewicz fragment
    with pytest.raises(ValueError):
        decide_validity(pf("P -. #1/2^1"), mode="lukasiewicz")
    assert decide_validity(pf("P -. #0"), mode="lukasiewicz").value == 1


def test_format_valuation():
    assert format_valuation({"Q": F(0), "P": F(1)}) == "v(P)=1 v(Q)=0"


def test_counter_model_is_lexmin_optimum():
    # value max(p - q, 0) is 1 only at p=1, q=0
    res = decide_validity(Monus(P, Q))
    assert res.valuation == {"P": F(1), "Q": F(0)} and res.value == 1
    # max(1 - p, 0) is maximal on the whole q-axis at p=0: lex-least picks q=0
    res = decide_validity(Monus(Neg(P), P))
    assert res.valuation["P"] == 0 and res.value == 1


def test_small_formulas_against_vertex_oracle():
    rng = random.Random(17)
    leaves = [P, Q, Const(F(1, 2))]
    fs = enumerate_formulas(leaves, 4)
    for phi in rng.sample(fs, 400):
        res = decide_validity(phi)
        best, _ = vertex_max((), phi, ["P", "Q"])
        got = 0 if res == Valid() else res.value
        assert got == best
        if res != Valid():
            assert peval(phi, res.valuation) == got
        assert grid_max(phi, ["P", "Q"], n=5) <= got


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_degree_consequence_agree_and_monotone(rng):
    leaves = [P, Q, Const(F(1, 4)), Const(F(1, 2))]
    fs = enumerate_formulas(leaves, 3)
    sigma = [rng.choice(fs) for _ in range(rng.randint(0, 3))]
    phi = rng.choice(fs)
    deg = degree_of_truth(sigma, phi)
    cons = decide_consequence(sigma, phi)
    if deg == Unsat():
        assert cons == Holds() and decide_satisfiability(sigma) == Unsat()
        return
    assert (deg == 0) == (cons == Holds())
    oracle = vertex_max(sigma, phi, ["P", "Q"])
    assert oracle is not None and oracle[0] == deg
    bigger = sigma + [rng.choice(fs)]
    d2 = degree_of_truth(bigger, phi)
    assert d2 == Unsat() or d2 <= deg


def test_abstract_consequence():
    px = pf("sup x . P(x)")
    assert abstract_consequence([Monus(px, Const(F(1, 4)))], Monus(px, Const(F(1, 4))))
    assert not abstract_consequence([], px)
    # distinct first-order atoms are independent variables
    assert not abstract_consequence([pf("P(x)")], pf("P(y)"))
