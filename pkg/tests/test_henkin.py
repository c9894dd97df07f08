import random
from fractions import Fraction as F

import pytest

from cfol.generators import random_sentence, validated_structures
from cfol.henkin import (
    TheoryOracle, closed_terms, expand_level, henkin_axiom, name_elements,
    term_prestructure, witness_level, witness_model_extension,
)
from cfol.numerics import Modulus
from cfol.parser import parse_formula
from cfol.semantics import PreStructure, eval as ev, quotient_completion
from cfol.syntax import App, Atom, Const, Monus, Signature, Sup, Symbol, Var, wedge

SIG = Signature({"P": Symbol(1)})
Px = Atom("P", (Var("x"),))


def test_axiom_shape():
    ax, c = henkin_axiom(Px, "x", F(1, 4), F(1, 2))
    want = wedge(Monus(Sup("x", Px), Const(F(1, 2))), Monus(Const(F(1, 4)), Atom("P", (App(c.name),))))
    assert ax.formula == want
    assert c.level == 1 and witness_level(c.name) == 1 and ax.level == 1
    # same request, same constant
    assert henkin_axiom(Px, "x", F(1, 4), F(1, 2))[1].name == c.name
    assert henkin_axiom(Px, "x", F(1, 8), F(1, 2))[1].name != c.name


def test_axiom_errors_and_closed():
    with pytest.raises(ValueError):
        henkin_axiom(Px, "x", F(1, 2), F(1, 2))
    with pytest.raises(ValueError):
        henkin_axiom(Px, "x", F(1, 3), F(1, 2))
    closed = Atom("P", (Var("y"),))
    ax, _ = henkin_axiom(closed, "x", 0, 1)
    # the second conjunct is #0 -. phi, untouched by the substitution
    assert ax.formula.right.right.right == closed


def test_levels_stack():
    _, c1 = henkin_axiom(Px, "x", 0, F(1, 2))
    inner = Monus(Px, Atom("P", (App(c1.name),)))
    _, c2 = henkin_axiom(inner, "x", 0, F(1, 2))
    assert c2.level == 2 and witness_level("c") == 0


def test_expand_level():
    sig2, axs = expand_level(SIG, [Px], [("x", F(1, 4), F(1, 2))])
    assert len(axs) == 1 and sig2.constants == [axs[0].constant.name]
    assert expand_level(SIG, [Px], []) == (SIG, [])
    _, axs = expand_level(SIG, [Px, Px], [("x", F(1, 4), F(1, 2))] * 2)
    assert len(axs) == 1
    with pytest.raises(ValueError):
        expand_level(SIG, [Atom("Q", ())], [("x", 0, F(1, 2))])


def _two():
    return PreStructure(SIG, ["a", "b"], {}, {"P": {("a",): F(1, 3), ("b",): F(3, 4)}})


def test_witness_model_extension():
    _, axs = expand_level(SIG, [Px], [("x", F(1, 4), F(1, 2))])
    N = witness_model_extension(_two(), axs)
    c = axs[0].constant.name
    assert N.fun_tables[c][()] == "b"
    assert ev(N, None, axs[0].formula) == 0
    low = PreStructure(SIG, ["a", "b"], {}, {"P": {("a",): F(1, 8), ("b",): F(1, 8)}})
    N = witness_model_extension(low, axs)
    assert ev(N, None, axs[0].formula) == 0 and N.fun_tables[c][()] == "a"
    one = PreStructure(SIG, ["e"], {}, {"P": {("e",): F(1, 2)}})
    assert witness_model_extension(one, axs).fun_tables[c][()] == "e"


def test_witness_axioms_hold_in_random_models():
    rng = random.Random(12)
    sig = Signature({"P": Symbol(1), "R": Symbol(2)}, {"f": Symbol(1)})
    _, ms = validated_structures(rng, sig, 5, 3)
    phis = [parse_formula("P(f(x))", sig), parse_formula("sup y . R(x, y) -. P(x)", sig)]
    for M in ms:
        budget = [("x", F(k, 8), F(k + 1, 8)) for k in range(0, 8, 3)]
        sig1, axs = expand_level(M.sig, phis, budget)
        N = witness_model_extension(M, axs)
        assert all(ev(N, None, a.formula) == 0 for a in axs)
        assert set(sig1.constants) <= set(N.sig.constants)


def test_closed_terms():
    sig = Signature({"P": Symbol(0)}, {"f": Symbol(1), "g": Symbol(2), "c": Symbol(0)})
    assert closed_terms(sig, 0) == [App("c")]
    t1 = closed_terms(sig, 1)
    assert len(t1) == 3 and App("f", (App("c"),)) in t1
    assert len(closed_terms(sig, 2)) == 1 + 2 + (3 + 9 - 2)


def test_oracle():
    M = name_elements(_two())
    o = TheoryOracle(M)
    pa = Atom("P", (App("c_a"),))
    assert o.sup_lower(pa) == F(1, 3) and o.inf_upper(pa) == F(1, 3)
    assert o.contains(Monus(pa, Const(F(1, 2))))
    assert not o.contains(pa)
    with pytest.raises(ValueError):
        o.contains(Px)
    with pytest.raises(ValueError):
        TheoryOracle(_two())


def test_term_model_single():
    sig = Signature({"P": Symbol(1)}, {"f": Symbol(1)})
    M = name_elements(PreStructure(sig, ["a"], {"f": {("a",): "a"}}, {"P": {("a",): F(1, 2)}}))
    T = term_prestructure(TheoryOracle(M), depth=0)
    assert T.carrier == ("c_a",)
    assert T.rel_tables["P"][("c_a",)] == F(1, 2)
    assert T.fun_tables["f"][("c_a",)] == "c_a"
    T1 = term_prestructure(TheoryOracle(M), depth=1)
    assert T1.fun_tables["f"][("f(c_a)",)] == "c_a"


def test_term_model_matches_backing():
    rng = random.Random(21)
    ident = (Modulus.identity(),)
    sig = Signature({"P": Symbol(1, ident)}, {"f": Symbol(1, ident)}, True)
    M = PreStructure(sig, ["a", "b"], {"f": {("a",): "b", ("b",): "b"}},
                     {"P": {("a",): F(1, 4), ("b",): F(3, 4)}},
                     {("a", "a"): 0, ("b", "b"): 0, ("a", "b"): 1, ("b", "a"): 1})
    named = name_elements(M)
    T = term_prestructure(TheoryOracle(named), depth=1)
    Q, h = quotient_completion(T)
    assert len(Q.carrier) == 2
    for _ in range(200):
        phi = random_sentence(rng, named.sig, 3)
        assert ev(named, None, phi) == ev(Q, None, phi) == ev(T, None, phi)
