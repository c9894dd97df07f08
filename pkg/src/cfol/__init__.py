"""Continuous first-order logic: exact semantics over finite pre-structures,
a Hilbert-style proof kernel, propositional decision procedures and Henkin
term-model machinery."""

from .numerics import Dyadic, Modulus
from .parser import (
    ParseError, parse_formula, parse_proof, parse_signature, parse_structure,
    parse_term, parse_theory, print_formula, print_proof, print_signature,
    print_structure, print_term,
)
from .prop import (
    CounterModel, Holds, Model, Unsat, Valid, decide_consequence,
    decide_satisfiability, decide_validity, degree_of_truth,
)
from .semantics import (
    Assignment, PreStructure, eval, models, quotient_completion, solve_predicates,
    validate,
)
from .syntax import Signature, Symbol
from .kernel import (
    Ax, Hyp, MP, Proof, Taut, check_proof, deduction_transform,
    degree_of_provability_upper, generalize_transform, match_axiom,
    undo_deduction,
)

__all__ = [
    "Dyadic", "Modulus", "ParseError", "parse_formula", "parse_proof",
    "parse_signature", "parse_structure", "parse_term", "parse_theory",
    "print_formula", "print_proof", "print_signature", "print_structure", "print_term",
    "CounterModel", "Holds", "Model", "Unsat", "Valid", "decide_consequence",
    "decide_satisfiability", "decide_validity", "degree_of_truth", "Assignment",
    "PreStructure", "eval", "models", "quotient_completion", "solve_predicates",
    "validate", "Signature", "Symbol", "Ax", "Hyp", "MP", "Proof", "Taut",
    "check_proof", "deduction_transform", "degree_of_provability_upper",
    "generalize_transform", "match_axiom", "undo_deduction",
]

__version__ = "0.1.0"
