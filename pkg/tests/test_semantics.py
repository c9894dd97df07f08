import random
from fractions import Fraction as F

import pytest

from cfol.generators import random_sentence, random_signature, validated_structures
from cfol.numerics import Modulus
from cfol.parser import parse_formula, parse_structure
from cfol.semantics import (
    Assignment, PreStructure, eval as ev, eval_term, models, quotient_completion,
    solve_predicates, validate,
)
from cfol.syntax import App, Atom, Signature, Symbol, Var

x = Var("x")
SIG = Signature({"P": Symbol(1)}, {"f": Symbol(1)})
M2 = PreStructure(SIG, ["a", "b"], {"f": {("a",): "b", ("b",): "a"}},
                  {"P": {("a",): F(1, 3), ("b",): F(3, 4)}})


def pf(text, sig=SIG):
    return parse_formula(text, sig)


def test_eval_term():
    s = Assignment("a", {"x": "a"})
    assert eval_term(M2, s, x) == "a"
    assert eval_term(M2, s, App("f", (x,))) == "b"
    assert eval_term(M2, s, App("f", (App("f", (x,)),))) == "a"


def test_eval():
    assert ev(M2, None, pf("sup x . P(x)")) == F(3, 4)
    assert ev(M2, None, pf("inf x . P(x)")) == F(1, 3)
    assert ev(M2, {"x": "a"}, pf("neg P(x)")) == F(2, 3)
    assert ev(M2, {"x": "b"}, pf("half P(f(x)) -. #1/2^3")) == F(1, 24)
    # the bound variable shadows the assignment
    assert ev(M2, {"x": "a"}, pf("sup x . P(f(x))")) == F(3, 4)
    with pytest.raises(ValueError):
        Assignment.default_for(M2, {"x": "z"})


def test_models():
    assert models(M2, None, [])
    assert models(M2, None, [pf("P(x) -. P(x)")])
    assert not models(M2, None, [pf("#1/2^1")])
    assert models(M2, {"x": "a"}, [pf("P(x) -. #1/2^1")])
    assert not models(M2, {"x": "b"}, [pf("P(x) -. #1/2^1")])


MSIG = Signature({"P": Symbol(1, (Modulus.identity(),))}, {}, True)


def test_validate_triangle():
    M = parse_structure("carrier a b c\nrel P: (a)=0 (b)=0 (c)=0\n"
                        "metric: (a,b)=1/4 (b,c)=1/4 (a,c)=1\n", MSIG)
    rep = validate(M)
    assert not rep.ok and any(v.kind == "triangle" for v in rep.violations)
    assert "VIOLATION triangle" in rep.text()


def test_validate_moduli():
    M = parse_structure("carrier a b\nrel P: (a)=0 (b)=1/2\nmetric: (a,b)=0\n", MSIG)
    rep = validate(M)
    assert not rep.ok and any("modul" in v.kind for v in rep.violations)
    # with distance 1 the identity modulus is met
    ok = parse_structure("carrier a b\nrel P: (a)=0 (b)=1/2\nmetric: (a,b)=1\n", MSIG)
    assert validate(ok).ok


def test_validate_single():
    M = parse_structure("carrier a\nrel P: (a)=1/2\nmetric: (a,a)=0\n", MSIG)
    assert validate(M).ok and validate(M).text() == "VALID STRUCTURE\n"


def test_quotient_collapses():
    fs = Signature({"P": Symbol(1, (Modulus.identity(),))}, {"f": Symbol(1, (Modulus.identity(),))}, True)
    M = parse_structure("carrier a b c\nfun f: (a)->c (b)->c (c)->a\nrel P: (a)=1/4 (b)=1/4 (c)=1\n"
                        "metric: (a,b)=0 (a,c)=1 (b,c)=1\n", fs)
    Q, h = quotient_completion(M)
    assert len(Q.carrier) == 2 and h.mapping["b"] == h.mapping["a"]
    assert h.is_surjective() and h.is_morphism()
    rng = random.Random(2)
    for _ in range(20):
        phi = random_sentence(rng, fs, 3)
        assert ev(M, None, phi) == ev(Q, None, phi)


def test_quotient_identity_cases():
    Q, h = quotient_completion(M2)
    assert Q.carrier == M2.carrier and h.mapping == {"a": "a", "b": "b"}
    M = parse_structure("carrier a b\nrel P: (a)=0 (b)=1/2\nmetric: (a,b)=1\n", MSIG)
    Q, h = quotient_completion(M)
    assert Q.carrier == M.carrier and Q.metric == M.metric and h.is_morphism()
    bad = parse_structure("carrier a b\nrel P: (a)=0 (b)=1/2\nmetric: (a,b)=0\n", MSIG)
    with pytest.raises(ValueError):
        quotient_completion(bad)


def test_quotient_random_validated():
    rng = random.Random(8)
    for _ in range(10):
        sig = random_signature(rng, metric=True)
        _, ms = validated_structures(rng, sig, 3, 4, zero_pairs=True)
        for M in ms:
            Q, h = quotient_completion(M)
            assert validate(Q).ok and h.is_morphism() and h.is_surjective()
            assert all(Q.d(a, b) > 0 for a in Q.carrier for b in Q.carrier if a != b)


def test_solve_predicates():
    S = Signature({"P": Symbol(1)})
    M = solve_predicates(S, ["a"], {}, None, [pf("P(x) -. #1/2^1", S)])
    assert M is not None and models(M, None, [pf("P(x) -. #1/2^1", S)])
    assert M.rel_tables["P"][("a",)] <= F(1, 2)
    assert solve_predicates(S, ["a", "b"], {}, None,
                            [pf("#1/2^1 -. P(x)", S), pf("P(x) -. #1/2^2", S)]) is None
    M = solve_predicates(S, ["a", "b"], {}, None, [])
    assert all(v == 0 for v in M.rel_tables["P"].values())


def test_solve_predicates_quantified_and_functions():
    S = Signature({"P": Symbol(1)}, {"f": Symbol(1)})
    gamma = [pf("#1/2^1 -. sup x . P(x)", S), pf("sup x . (P(f(x)) -. neg P(x))", S)]
    M = solve_predicates(S, ["a", "b"], None, None, gamma, enumerate_functions=True)
    assert M is not None and models(M, None, gamma)
    # P(f(x)) <= 1 - P(x) everywhere, yet some P value is at least 1/2
    assert max(M.rel_tables["P"].values()) >= F(1, 2)


def test_solve_predicates_respects_moduli():
    S = Signature({"P": Symbol(1, (Modulus.identity(),))}, {}, True)

    def metric(dist):
        return {("a", "a"): 0, ("b", "b"): 0, ("a", "b"): dist, ("b", "a"): dist}
    # P(a)=0 and some P value at least 1/2, so P(b) >= 1/2
    gamma = [parse_formula("P(x)", S), parse_formula("#1/2^1 -. sup x . P(x)", S)]
    # distance 1/4 with the identity modulus caps |P(a)-P(b)| at 1/4
    assert solve_predicates(S, ["a", "b"], {}, metric(F(1, 4)), gamma, assignment={"x": "a"}) is None
    M = solve_predicates(S, ["a", "b"], {}, metric(F(3, 4)), gamma, assignment={"x": "a"})
    assert M is not None and validate(M).ok and models(M, {"x": "a"}, gamma)
    assert M.rel_tables["P"] == {("a",): 0, ("b",): F(1, 2)}


def test_atom_lookup():
    assert M2.relation("P", ("b",)) == F(3, 4)
    with pytest.raises(ValueError):
        PreStructure(SIG, [], {}, {})
    with pytest.raises(ValueError):
        PreStructure(MSIG, ["a"], {}, {"P": {("a",): 0}})
    assert Atom("P", (x,)) == pf("P(x)")
