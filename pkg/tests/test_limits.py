"""Families of growing structures: truth profiles, measure limits, densities."""

from fractions import Fraction

import pytest

from aml.limits import (
    LimitError,
    banach_density,
    cyclic_family,
    furstenberg_check,
    interval_family,
    limit_measure,
    parse_family,
    truth_profile,
)
from aml.parser import parse_formula
from aml.semantics import Budget, BudgetExceeded
from aml.structures import VFlag

CYCLIC = cyclic_family(1, 30)
SIG = CYCLIC.signature

SINGLETON = parse_formula("x = e", SIG)      # measure 1/n, falling to 0
EVERYTHING = parse_formula("x = x", SIG)     # measure 1 throughout
COMPLEMENT = parse_formula("~(x = e)", SIG)  # measure 1 - 1/n, rising to 1


# -- families -------------------------------------------------------------------

def test_cyclic_family_builds_groups():
    m = CYCLIC.at(5)
    assert m.n == 5
    assert m.constants == {"e": 0}
    assert m.apply_function("add", (3, 4)) == 2
    assert list(CYCLIC.indices()) == list(range(1, 31))


def test_cyclic_family_predicates():
    fam = cyclic_family(1, 10, predicates={"E": "even", "Z": "zero"})
    m = fam.at(6)
    assert m.relations["E"][1] == frozenset({(0,), (2,), (4,)})
    assert m.relations["Z"][1] == frozenset({(0,)})
    with pytest.raises(LimitError):
        cyclic_family(1, 5, predicates={"E": "no-such-rule"})


def test_interval_family_builds_initial_segments():
    fam = interval_family([2, 4], 3, 8)
    m = fam.at(5)
    assert m.n == 5
    assert m.relations["E"][1] == frozenset({(1,), (3,)})   # elements 2 and 4
    assert m.functions["f"][1] == (1, 2, 3, 4, 0)            # successor, wrapping


def test_family_index_bounds():
    with pytest.raises(LimitError):
        cyclic_family(5, 4)
    with pytest.raises(LimitError):
        CYCLIC.at(31)


# -- truth profiles -----------------------------------------------------------------

def test_profile_eventually_true():
    tp = truth_profile(CYCLIC, parse_formula("m[x] <= 1/3 . x = e", SIG))
    assert tp.verdict == "eventually-true"
    assert tp.from_index == 3                      # 1/n <= 1/3 exactly from n = 3
    assert tp.describe() == "EventuallyTrue(3)"
    assert tp.values[:3] == (False, False, True)


def test_profile_eventually_false():
    tp = truth_profile(CYCLIC, parse_formula("m[x] > 1/3 . x = e", SIG))
    assert tp.describe() == "EventuallyFalse(3)"


def test_profile_needs_slack_beyond_stabilization():
    short = cyclic_family(1, 6)
    tp = truth_profile(short, parse_formula("m[x] <= 1/3 . x = e", short.signature))
    assert tp.verdict == "undetermined"            # stabilizes at 3, but 3 + 5 > 6
    assert tp.describe() == "Undetermined"
    longer = cyclic_family(1, 9, predicates={})
    assert truth_profile(longer, parse_formula("m[x] <= 1/3 . x = e",
                                               longer.signature),
                         slack=1).verdict == "eventually-true"


def test_profile_rejects_open_formulas():
    with pytest.raises(LimitError):
        truth_profile(CYCLIC, parse_formula("x = e", SIG))


# -- measure limits --------------------------------------------------------------------

def test_limit_from_above_gets_plus_flag():
    lm = limit_measure(CYCLIC, SINGLETON, ("x",), 0)
    assert lm.verdict == "converged"
    assert lm.limit == 0
    assert lm.flag is VFlag.PLUS
    # approached from above: at the boundary neither < nor <= holds
    assert lm.lt_holds is False and lm.le_holds is False
    assert lm.describe() == "limit 0 flag +; m<0: False, m<=0: False"


def test_limit_of_constant_gets_exact_flag():
    lm = limit_measure(CYCLIC, EVERYTHING, ("x",), 1)
    assert lm.verdict == "converged"
    assert lm.limit == 1
    assert lm.flag is VFlag.DOT
    assert lm.lt_holds is False and lm.le_holds is True


def test_limit_from_below_gets_minus_flag():
    lm = limit_measure(CYCLIC, COMPLEMENT, ("x",), 1)
    assert lm.verdict == "converged"
    assert lm.flag is VFlag.MINUS
    assert lm.lt_holds is True and lm.le_holds is True


def test_oscillating_measure_is_undetermined():
    fam = cyclic_family(1, 20, predicates={"E": "even"})
    lm = limit_measure(fam, parse_formula("E(x)", fam.signature), ("x",),
                       Fraction(1, 2))
    assert lm.verdict == "undetermined"
    assert lm.note                                  # says why it failed
    assert lm.describe().startswith("Undetermined")
    assert lm.lt_holds is None and lm.le_holds is None


def test_limit_values_are_recorded():
    lm = limit_measure(cyclic_family(1, 4), SINGLETON, ("x",), 0)
    assert lm.values == (Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(1, 4))


def test_limit_rejects_stray_free_variables():
    # "add(x, y) = e" mentions y, which is outside the tracked tuple (x,)
    with pytest.raises(LimitError):
        limit_measure(CYCLIC, parse_formula("add(x, y) = e", SIG), ("x",), 0)


def test_limit_budget_propagates():
    with pytest.raises(BudgetExceeded):
        limit_measure(CYCLIC, SINGLETON, ("x",), 0, budget=Budget(3))


# -- window densities ---------------------------------------------------------------------

def test_banach_density_frozen_values():
    assert banach_density([2, 4, 6, 8, 10], 10, 2) == Fraction(2, 3)
    assert banach_density([1], 10, 5) == Fraction(1, 5)
    assert banach_density(range(1, 11), 10, 1) == 1
    assert banach_density([], 10, 1) == 0


def test_banach_density_takes_the_best_window():
    # the dense block 5..8 dominates: window [5, 9) has all four points
    assert banach_density([5, 6, 7, 8], 20, 4) == 1
    assert banach_density([5, 6, 7, 8], 20, 8) == Fraction(1, 2)


def test_banach_density_argument_checks():
    with pytest.raises(LimitError):
        banach_density([1], 10, 0)
    with pytest.raises(LimitError):
        banach_density([11], 10, 1)     # element beyond the horizon


def test_furstenberg_frozen_case():
    cyc, plain, bound = furstenberg_check([2, 4, 6, 8, 10], 10, [0, 2])
    assert (cyc, plain, bound) == (Fraction(1, 2), Fraction(2, 5), Fraction(1, 5))
    assert abs(cyc - plain) <= bound


def test_furstenberg_bound_holds_across_shift_sets():
    for shifts in ([0], [0, 1], [0, 3, 5], [10]):
        cyc, plain, bound = furstenberg_check([1, 3, 4, 7, 9], 12, shifts)
        assert abs(cyc - plain) <= bound
        assert bound == Fraction(max(shifts), 12)


# -- family files --------------------------------------------------------------------------

def test_parse_cyclic_family():
    fam = parse_family("family cyclic 1 20 predicate E even")
    assert fam.kind == "cyclic"
    assert (fam.i_lo, fam.i_hi) == (1, 20)
    assert fam.at(4).relations["E"][1] == frozenset({(0,), (2,)})


def test_parse_interval_family_with_loader():
    fam = parse_family("family interval E.txt 2 6",
                       loader=lambda path: "1 3 5")
    assert fam.kind == "interval"
    assert fam.at(5).relations["E"][1] == frozenset({(0,), (2,), (4,)})


def test_parse_family_errors():
    for bad in ("", "family", "family cyclic 1", "family cyclic 1 x",
                "family cyclic 1 5 predicate E", "family interval only 1",
                "family bogus 1 5"):
        with pytest.raises(LimitError):
            parse_family(bad)
    with pytest.raises(LimitError):
        parse_family("family interval E.txt 1 5", loader=lambda p: "one three")
