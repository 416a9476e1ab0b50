"""Concrete-syntax round trips, precedence, error spans, structure files."""

import random
from fractions import Fraction

import pytest

from aml.axioms import random_formula
from aml.parser import (
    ParseError,
    parse_formula,
    parse_structure,
    parse_term,
    print_formula,
    print_structure,
    print_term,
    tokenize,
)
from aml.syntax import (
    And,
    Atom,
    Cmp,
    Const,
    Equality,
    Exists,
    Forall,
    Func,
    Implies,
    Meas,
    Not,
    Or,
    Signature,
    Var,
)

SIG = Signature(constants=("e",), functions=(("f", 1), ("mul", 2)),
                relations=(("P", 1), ("R", 2)))


def rt(text: str):
    """Parse, print, re-parse; assert stability and return the AST."""
    phi = parse_formula(text, SIG)
    assert parse_formula(print_formula(phi), SIG) == phi
    return phi


# -- tokens -------------------------------------------------------------------

def test_tokenize_kinds_and_spans():
    toks = tokenize("m[x] <= 1/4 . P(x)")
    texts = [t.text for t in toks]
    assert texts == ["m", "[", "x", "]", "<=", "1", "/", "4", ".",
                     "P", "(", "x", ")", ""]
    assert toks[-1].kind == "eof"
    assert toks[0].span.start == 0
    assert toks[4].span.start == 5 and toks[4].span.end == 7


def test_tokenize_rejects_stray_characters():
    with pytest.raises(ParseError) as ex:
        tokenize("P(x) ? Q")
    assert ex.value.span.start == 5


# -- terms ----------------------------------------------------------------------

def test_parse_term_shapes():
    assert parse_term("x", SIG) == Var("x")
    assert parse_term("e", SIG) == Const("e")
    assert parse_term("mul(f(x), e)", SIG) == Func("mul", (Func("f", (Var("x"),)), Const("e")))


def test_print_term_round_trip():
    t = Func("mul", (Func("f", (Var("x"),)), Const("e")))
    assert parse_term(print_term(t), SIG) == t


# -- formula grammar ---------------------------------------------------------------

def test_atoms_and_equality():
    assert rt("P(x)") == Atom("P", (Var("x"),))
    assert rt("x = e") == Equality(Var("x"), Const("e"))
    assert rt("R(x, f(y))") == Atom("R", (Var("x"), Func("f", (Var("y"),))))


def test_precedence_imp_weakest_and_strongest():
    # ~ binds tighter than &, & tighter than |, | tighter than ->
    phi = rt("~(x = y) -> P(x) | P(y) & R(x,y)")
    assert phi == Implies(
        Not(Equality(Var("x"), Var("y"))),
        Or(Atom("P", (Var("x"),)),
           And(Atom("P", (Var("y"),)), Atom("R", (Var("x"), Var("y"))))))


def test_implies_right_associative():
    phi = rt("P(x) -> P(y) -> P(x)")
    assert phi == Implies(Atom("P", (Var("x"),)),
                          Implies(Atom("P", (Var("y"),)), Atom("P", (Var("x"),))))


def test_quantifiers_take_whole_rest():
    phi = rt("forall x . P(x) -> P(x)")
    assert phi == Forall("x", Implies(Atom("P", (Var("x"),)), Atom("P", (Var("x"),))))
    assert rt("exists y . R(x, y)") == Exists("y", Atom("R", (Var("x"), Var("y"))))


def test_measure_constructor_forms():
    assert rt("m[x] < 1/2 . P(x)") == Meas(("x",), Cmp.LT, Fraction(1, 2),
                                           Atom("P", (Var("x"),)))
    assert rt("m[x,y] <= 1/3 . R(x, y)") == Meas(("x", "y"), Cmp.LE, Fraction(1, 3),
                                                 Atom("R", (Var("x"), Var("y"))))


def test_measure_ge_gt_are_sugar_for_negations():
    assert parse_formula("m[x] >= 1/3 . P(x)", SIG) == \
        Not(Meas(("x",), Cmp.LT, Fraction(1, 3), Atom("P", (Var("x"),))))
    assert parse_formula("m[x] > 0 . P(x)", SIG) == \
        Not(Meas(("x",), Cmp.LE, Fraction(0), Atom("P", (Var("x"),))))


def test_nested_measures():
    phi = rt("m[x] <= 1/2 . m[y] < 1/4 . R(x, y)")
    assert phi == Meas(("x",), Cmp.LE, Fraction(1, 2),
                       Meas(("y",), Cmp.LT, Fraction(1, 4),
                            Atom("R", (Var("x"), Var("y")))))


def test_integer_and_fraction_thresholds():
    assert parse_formula("m[x] <= 1 . P(x)", SIG).threshold == 1
    assert parse_formula("m[x] < 3/4 . P(x)", SIG).threshold == Fraction(3, 4)


# -- error reporting --------------------------------------------------------------

BAD_INPUTS = [
    "P(",                 # unclosed argument list
    "forall. P(x)",       # missing bound variable
    "m[x,x] < 1. P(x)",   # repeated measure variable
    "m[x] < . P(x)",      # missing threshold
    "R(x)",               # wrong arity
    "Q(x)",               # unknown relation
    "P(x) &",             # dangling connective
    "m[x] < -1 . P(x)",   # negative threshold
    "(P(x)",              # unclosed paren
    "x =",                # missing right term
]


def test_every_error_carries_a_span():
    for text in BAD_INPUTS:
        with pytest.raises(ParseError) as ex:
            parse_formula(text, SIG)
        span = ex.value.span
        assert 0 <= span.start <= span.end <= len(text) + 1, text


def test_error_span_points_at_offender():
    # 'Q' is undeclared, so it reads as a term and the '(' is the offender.
    with pytest.raises(ParseError) as ex:
        parse_formula("P(x) & Q(x)", SIG)
    assert ex.value.span.start == 8
    with pytest.raises(ParseError) as ex:
        parse_formula("R(x, y", SIG)
    assert ex.value.span.start == len("R(x, y")


def test_inequality_atom_is_negated_equality():
    assert parse_formula("x != e", SIG) == Not(Equality(Var("x"), Const("e")))


# -- generated round trips -----------------------------------------------------------

def test_generated_formulae_round_trip():
    rng = random.Random(20260816)
    for _ in range(200):
        phi = random_formula(rng, ("x", "y"), depth=3, rank_budget=2, sig=SIG)
        text = print_formula(phi)
        assert parse_formula(text, SIG) == phi, text


# -- structure files -----------------------------------------------------------------

STRUCT_TEXT = """
universe 4
measure counting
constant e 0
function f 1
1 2 3 0
relation P 1
0 2
end
relation R 2
0 1
1 2
end
"""


def test_parse_structure_fields():
    m = parse_structure(STRUCT_TEXT)
    assert m.n == 4
    assert m.constants == {"e": 0}
    assert m.functions["f"] == (1, (1, 2, 3, 0))
    assert m.relations["P"] == (1, frozenset({(0,), (2,)}))
    assert m.relations["R"] == (2, frozenset({(0, 1), (1, 2)}))
    assert m.uniform_weight == Fraction(1, 4)


def test_structure_round_trip():
    m = parse_structure(STRUCT_TEXT)
    assert parse_structure(print_structure(m)) == m


def test_weighted_structure():
    m = parse_structure("universe 2\nmeasure weights 1/3 2/3\n")
    assert m.weights == (Fraction(1, 3), Fraction(2, 3))
    assert m.total_mass == 1
    assert m.uniform_weight is None
    assert parse_structure(print_structure(m)) == m


STRUCT_ERRORS = [
    "universe 0",                               # empty universe
    "universe 2\nconstant e 5",                 # constant out of range
    "universe 2\nfunction f 1\n0",              # non-total function table
    "universe 2\nrelation P 1\n0",              # missing end
    "universe 2\nmeasure weights 1/2 -1/2",     # negative weight
    "universe 2\nbogus",                        # unknown declaration
]


def test_structure_errors_carry_spans():
    for text in STRUCT_ERRORS:
        with pytest.raises(ParseError) as ex:
            parse_structure(text)
        assert ex.value.span.end >= ex.value.span.start >= 0, text
