from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from cfol.generators import random_formula, random_signature, random_structure, validated_structures
from cfol.kernel import MP, Ax, Hyp, Taut
from cfol.numerics import Modulus
from cfol.parser import (
    ParseError, infer_signature, parse_formula, parse_modulus, parse_proof,
    parse_signature, parse_structure, parse_term, parse_theory, print_formula,
    print_proof, print_signature, print_structure,
)
from cfol.syntax import (
    App, Atom, Const, Half, Metric, Monus, Neg, Signature, Sup, Symbol, Var,
    absdiff, dotplus, inf, monus_n, wedge,
)

x = Var("x")
Px, Qx = Atom("P", (x,)), Atom("Q", (x,))
P, Q = Atom("P"), Atom("Q")
SIG = Signature({"P": Symbol(1), "Q": Symbol(1)}, {"f": Symbol(1), "c": Symbol(0)}, True)


def test_examples():
    assert parse_formula("(P(x) -. Q(x)) -. P(x)") == Monus(Monus(Px, Qx), Px)
    assert parse_formula("sup x . half neg P(x)") == Sup("x", Half(Neg(Px)))
    assert parse_formula("#3/2^2") == Const(F(3, 4))
    assert parse_formula("#0") == Const(0) and parse_formula("#1") == Const(1)


def test_printing():
    assert print_formula(Monus(P, Q)) == "(P -. Q)"
    assert print_formula(Const(F(1, 4))) == "#1/2^2"
    assert print_formula(Sup("x", Neg(Px))) == "sup x . neg P(x)"


def test_monus_left_assoc_and_binding():
    assert parse_formula("P -. Q -. P") == Monus(Monus(P, Q), P)
    # unary operators bind tighter than -.
    assert parse_formula("sup x . P(x) -. Q(x)") == Monus(Sup("x", Px), Qx)
    assert parse_formula("neg P -. Q") == Monus(Neg(P), Q)


def test_derived_forms():
    assert parse_formula("P /\\ Q") == wedge(P, Q)
    assert parse_formula("|P - Q|") == absdiff(P, Q)
    assert parse_formula("P +. Q") == dotplus(P, Q)
    assert parse_formula("P -.3 Q") == monus_n(P, 3, Q)
    assert parse_formula("inf x . P(x)") == inf("x", Px)
    assert parse_formula("P \\/ Q") == Neg(wedge(Neg(P), Neg(Q)))


def test_terms_and_metric():
    assert parse_formula("d(f(x), c)", SIG) == Metric(App("f", (x,)), App("c"))
    assert parse_term("f(f(c))", SIG) == App("f", (App("f", (App("c"),)),))
    # with a signature a bare 0-ary function name is a constant, otherwise a variable
    assert parse_formula("P(c)", SIG) == Atom("P", (App("c"),))
    assert parse_formula("P(c)") == Atom("P", (Var("c"),))


@pytest.mark.parametrize("text,msg,col", [
    ("P(x, x)", "arity", 1),
    ("R(x)", "unknown relation", 1),
    ("P(g(x))", "unknown function", 3),
    ("P(x) -. ?", "unexpected character", 9),
    ("(P(x)", "expected ')'", 6),
    ("#3/2^1", "not a dyadic", 1),
])
def test_errors_carry_spans(text, msg, col):
    with pytest.raises(ParseError) as info:
        parse_formula(text, SIG)
    assert msg in str(info.value)
    assert info.value.span.line == 1 and info.value.span.column == col


def test_metric_without_flag():
    with pytest.raises(ParseError, match="metric"):
        parse_formula("d(x, x)", Signature({"P": Symbol(1)}))


def test_infer_signature():
    sig = infer_signature(["P(f(x), y) -. Q", "d(x, y)"])
    assert sig.relations["P"].arity == 2 and sig.relations["Q"].arity == 0
    assert sig.functions["f"].arity == 1 and sig.has_metric


@settings(max_examples=150, deadline=None)
@given(st.randoms(use_true_random=False))
def test_formula_round_trip(rng):
    sig = random_signature(rng)
    phi = random_formula(rng, sig, rng.randint(0, 5), term_depth=2)
    text = print_formula(phi)
    assert parse_formula(text, sig) == phi
    assert print_formula(parse_formula(text, sig)) == text


def test_theory_comments():
    fs = parse_theory("# a comment\nP -. Q\n\n#1/2^1 -. P\n")
    assert fs == [Monus(P, Q), Monus(Const(F(1, 2)), P)]


def test_modulus_and_signature_round_trip():
    m = parse_modulus("modulus [(1/4,1/8),(1/2,1/2),(1/2,3/4),(1,1)]")
    assert m(F(1, 2)) == F(3, 4)
    text = "metric modulus [(1,1/2)] modulus [(0,0),(1,1)]\nrel P/2 modulus [(1,1/4)] modulus [(1/2,1/2)]\nfun f/1\nconst c\n"
    sig = parse_signature(text)
    assert sig.has_metric and sig.relations["P"].moduli[0] == Modulus.constant(F(1, 4))
    assert parse_signature(print_signature(sig)) == sig
    with pytest.raises(ParseError):
        parse_signature("rel P/1\nfun P/1\n")
    with pytest.raises(ValueError, match="nondecreasing"):
        parse_modulus("modulus [(1/2,1/2),(1,1/4)]")


STRUCT = """carrier a b
fun f: (a)->b (b)->a
rel P: (a)=1/3 (b)=3/4
metric: (a,b)=1/2
"""


def test_structure_round_trip():
    M = parse_structure(STRUCT)
    assert len(M.carrier) == 2
    assert M.d("b", "a") == F(1, 2) and M.d("a", "a") == 0
    assert print_structure(parse_structure(print_structure(M))) == print_structure(M)


@pytest.mark.parametrize("text,msg", [
    ("carrier a\nrel P: (a)=5/3\n", "outside"),
    ("carrier a b\nrel P: (a)=1/2\n", "missing table entry"),
    ("carrier a\nfun f: (a)->z\n", "unknown element"),
    ("rel P: (a)=1\n", "carrier"),
    ("carrier a b\nrel P: (a)=0 (b)=0\nmetric: (a,a)=0\n", "missing metric entry"),
])
def test_structure_errors(text, msg):
    with pytest.raises(ParseError, match=msg):
        parse_structure(text)


def test_random_structures_round_trip():
    import random
    rng = random.Random(11)
    for _ in range(20):
        sig = random_signature(rng)
        M = random_structure(rng, sig, rng.randint(1, 4), zero_pairs=True)
        N = parse_structure(print_structure(M), sig)
        assert (N.carrier, N.fun_tables, N.rel_tables, N.metric) == (M.carrier, M.fun_tables, M.rel_tables, M.metric)


def test_skeleton():
    sig = parse_signature("rel P/1\nfun f/1\n")
    sk = parse_structure("carrier a b\nfun f: (a)->b (b)->a\n", sig, skeleton=True)
    assert sk.fun_tables["f"] == {("a",): "b", ("b",): "a"} and sk.metric is None


def test_proofs():
    pr = parse_proof("given P\ngiven Q -. P\nhyp 0\nhyp 1\nmp 0 1\n")
    assert pr.steps == (Hyp(0), Hyp(1), MP(0, 1))
    assert pr.conclusion == Q
    ax = parse_proof("ax (P -. Q) -. P")
    assert ax.steps == (Ax(Monus(Monus(P, Q), P)),)
    t = parse_proof("given P\nhyp 0\ntaut 0 P -. #1/2^1\ntaut - P -. P\n")
    assert t.steps[1] == Taut((0,), Monus(P, Const(F(1, 2))))
    assert t.steps[2] == Taut((), Monus(P, P))
    assert parse_proof(print_proof(t)) == t


@pytest.mark.parametrize("text,msg", [
    ("given P\nhyp 0\nhyp 0\nmp 5 0\n", "forward"),
    ("frobnicate 1\n", "malformed"),
    ("hyp 2\n", "undeclared"),
    ("mp 0\n", "two step indices"),
])
def test_proof_errors(text, msg):
    with pytest.raises(ParseError, match=msg):
        parse_proof(text)


def test_proof_formula_error_location():
    with pytest.raises(ParseError) as info:
        parse_proof("given P\nax (P -. ?)\n")
    assert info.value.span.line == 2 and info.value.span.column == 10


def test_validated_structures_print():
    import random
    rng = random.Random(5)
    sig, ms = validated_structures(rng, random_signature(rng), 3)
    for M in ms:
        assert parse_structure(print_structure(M), sig).rel_tables == M.rel_tables
