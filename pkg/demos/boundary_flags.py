"""How measure comparisons behave at their threshold.

A formula m[x] < q . phi asserts that the set {x : phi} has measure below q.
Away from the boundary the verdict is the numeric comparison; when the
measure lands exactly on q, the set's value flag decides:

    flag -  (approximation from below)  ->  both m < q and m <= q hold
    flag .  (exact value)               ->  only m <= q holds
    flag +  (approximation from above)  ->  neither holds

Concrete structures carry exact measures, so their sets wear flag '.'.
The other two flags appear when a measure is only known as a limit of
approximations; see demos/limits_demo.py for where '+' arises naturally.
"""

from fractions import Fraction

from aml.parser import parse_formula, parse_structure
from aml.semantics import check_continuity, evaluate, meas_holds
from aml.structures import VFlag
from aml.syntax import Cmp

Z6 = parse_structure("""
universe 6
measure counting
constant e 0
function add 2
0 1 2 3 4 5
1 2 3 4 5 0
2 3 4 5 0 1
3 4 5 0 1 2
4 5 0 1 2 3
5 0 1 2 3 4
relation P 1
0 2 4
end
""")


def show(text):
    verdict = evaluate(Z6, parse_formula(text, Z6.signature()))
    print(f"  {text:38s} -> {str(verdict).lower()}")


print("On Z_6 with normalized counting, P = {0, 2, 4} has measure 1/2:")
show("m[x] <  1/2 . P(x)")
show("m[x] <= 1/2 . P(x)")
show("m[x] >= 1/2 . P(x)")
show("m[x] >  1/2 . P(x)")
show("m[x] <  2/3 . P(x)")

print("\nThe boundary table for a measure landing exactly on the threshold:")
q = Fraction(1, 2)
for flag in (VFlag.MINUS, VFlag.DOT, VFlag.PLUS):
    lt = meas_holds(Cmp.LT, q, q, flag)
    le = meas_holds(Cmp.LE, q, q, flag)
    print(f"  flag {flag.value}:  m < q -> {str(lt).lower():5s}   "
          f"m <= q -> {str(le).lower()}")

print("\nNo single point weighs more than q exactly when q >= 1/|M|:")
for q in (Fraction(1, 6), Fraction(1, 6) - Fraction(1, 72), Fraction(1, 5)):
    print(f"  every-point-below {q!s:7s} -> "
          f"{str(check_continuity(Z6, q)).lower()}")

print("\nNested constructors quantify over measures of parameterized sets:")
show("m[x] <= 1/2 . m[y] <= 1/6 . add(x, y) = e")
