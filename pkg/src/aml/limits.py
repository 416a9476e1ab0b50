"""Eventual behavior of formula truth and measures along families of
growing finite structures, plus upper Banach density and a finite
shift-system comparison.

A StructureFamily maps each index i in a finite range to a finite measured
structure over one shared signature.  truth_profile records a sentence's
truth at every index and reports EventuallyTrue(i0)/EventuallyFalse(i0)
only when the verdict holds for every index from i0 on and i0 precedes the
end of the range by more than a slack margin — never extrapolating beyond
the computed range.  limit_measure watches the measure sequence of a
formula's extension and, when the recorded tail approaches a target value r
from one side, reports the limiting value together with an approach flag:
PLUS for approach from above, MINUS from below, DOT for a constant tail.
The induced boundary verdicts for m < r and m <= r follow the flag rules
(at the boundary, m < r holds only under MINUS; m <= r fails only under
PLUS).

The two built-in families mirror the package's running examples: cyclic
groups with named subset predicates, and integer intervals [1, i] carrying
a set E and the successor map with wraparound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .semantics import Budget, Evaluator, extension
from .structures import FiniteStructure, VFlag, measure
from .syntax import Formula, Signature, free_vars


class LimitError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Families


@dataclass(frozen=True)
class StructureFamily:
    """Finite indexed family i -> structure, i in [i_lo, i_hi]."""

    kind: str
    i_lo: int
    i_hi: int
    builder: Callable[[int], FiniteStructure]
    signature: Signature
    description: str = ""

    def __post_init__(self):
        if self.i_lo > self.i_hi:
            raise LimitError("empty index range")

    def indices(self) -> range:
        return range(self.i_lo, self.i_hi + 1)

    def at(self, i: int) -> FiniteStructure:
        if not self.i_lo <= i <= self.i_hi:
            raise LimitError(f"index {i} outside [{self.i_lo}, {self.i_hi}]")
        m = self.builder(i)
        if m.signature() != self.signature:
            raise LimitError(f"structure at index {i} does not match the "
                             f"family signature")
        return m


#: Named membership rules for cyclic-family predicates: rule(i) is the
#: predicate's extension inside {0, ..., i-1}.
PREDICATE_RULES: dict[str, Callable[[int], frozenset[int]]] = {
    "even": lambda i: frozenset(x for x in range(i) if x % 2 == 0),
    "odd": lambda i: frozenset(x for x in range(i) if x % 2 == 1),
    "zero": lambda i: frozenset({0}),
    "nonzero": lambda i: frozenset(range(1, i)),
    "evensize": lambda i: frozenset(range(i)) if i % 2 == 0 else frozenset(),
    "bottom-half": lambda i: frozenset(range((i + 1) // 2)),
}


def cyclic_family(i_lo: int, i_hi: int, predicates: dict[str, str] | None = None,
                  step: int = 1) -> StructureFamily:
    """The groups Z_i for i = i_lo, i_lo+step, ..., up to i_hi, with constant
    e = 0, binary addition mod i, and optional unary predicates drawn from
    PREDICATE_RULES (mapping predicate name -> rule id).

    With step > 1 the family is reindexed: index j holds Z_{i_lo + (j-i_lo)*step}.
    """
    if i_lo < 1:
        raise LimitError("cyclic family needs i_lo >= 1")
    predicates = dict(predicates or {})
    for name, rule in predicates.items():
        if rule not in PREDICATE_RULES:
            raise LimitError(f"unknown membership rule {rule!r} "
                             f"(available: {sorted(PREDICATE_RULES)})")

    def build(j: int) -> FiniteStructure:
        n = i_lo + (j - i_lo) * step
        add = tuple((a + b) % n for a in range(n) for b in range(n))
        rels = {name: (1, frozenset((x,) for x in PREDICATE_RULES[rule](n)))
                for name, rule in predicates.items()}
        return FiniteStructure(n, {"e": 0}, {"add": (2, add)}, rels)

    if step < 1:
        raise LimitError("step must be >= 1")
    count = (i_hi - i_lo) // step if step > 1 else i_hi - i_lo
    hi = i_lo + count if step > 1 else i_hi
    sig = build(i_lo).signature()
    label = f"Z_i for i = {i_lo}..{i_hi}" + (f" step {step}" if step > 1 else "")
    return StructureFamily("cyclic", i_lo, hi, build, sig, label)


def interval_family(elements, i_lo: int, i_hi: int) -> StructureFamily:
    """The systems ([1, i], E ∩ [1, i], successor with wraparound) for
    i = i_lo..i_hi: value v in [1, i] is element v-1, the unary predicate E
    marks the set's members, and f maps v to v+1 for v < i and i to 1."""
    e_set = frozenset(elements)
    if e_set and min(e_set) < 1:
        raise LimitError("interval-family elements must be >= 1")
    if i_lo < 1:
        raise LimitError("interval family needs i_lo >= 1")

    def build(i: int) -> FiniteStructure:
        succ = tuple(x + 1 if x + 1 < i else 0 for x in range(i))
        members = frozenset((v - 1,) for v in e_set if v <= i)
        return FiniteStructure(i, {}, {"f": (1, succ)}, {"E": (1, members)})

    sig = build(i_lo).signature()
    return StructureFamily("interval", i_lo, i_hi, build, sig,
                           f"([1,i], E, successor) for i = {i_lo}..{i_hi}")


# ---------------------------------------------------------------------------
# Truth profiles


@dataclass(frozen=True)
class TruthProfile:
    i_lo: int
    i_hi: int
    values: tuple[bool, ...]
    verdict: str          # "eventually-true" | "eventually-false" | "undetermined"
    from_index: int | None
    slack: int

    def describe(self) -> str:
        if self.verdict == "eventually-true":
            return f"EventuallyTrue({self.from_index})"
        if self.verdict == "eventually-false":
            return f"EventuallyFalse({self.from_index})"
        return "Undetermined"


def _stable_suffix_start(values: tuple[bool, ...], target: bool) -> int | None:
    """Position (0-based) of the minimal suffix of constant value ``target``
    covering the end of the sequence; None if the last value differs."""
    if not values or values[-1] is not target:
        return None
    start = len(values)
    while start > 0 and values[start - 1] is target:
        start -= 1
    return start


def truth_profile(family: StructureFamily, sigma: Formula, slack: int = 5,
                  budget: Budget | None = None) -> TruthProfile:
    """Evaluate a sentence at every index and classify its tail behavior.

    EventuallyTrue(i0) means: true at every recorded index >= i0, with
    i0 < i_hi - slack, and i0 minimal with that property (similarly for
    EventuallyFalse).  Anything else is Undetermined.
    """
    if free_vars(sigma):
        raise LimitError(f"profile needs a closed formula; free: "
                         f"{sorted(free_vars(sigma))}")
    if slack < 0:
        raise LimitError("slack must be >= 0")
    values = []
    for i in family.indices():
        ev = Evaluator(family.at(i), budget=budget)
        values.append(ev.eval(sigma, {}))
    values = tuple(values)
    for target, verdict in ((True, "eventually-true"), (False, "eventually-false")):
        start = _stable_suffix_start(values, target)
        if start is not None:
            i0 = family.i_lo + start
            if i0 < family.i_hi - slack:
                return TruthProfile(family.i_lo, family.i_hi, values,
                                    verdict, i0, slack)
    return TruthProfile(family.i_lo, family.i_hi, values, "undetermined",
                        None, slack)


# ---------------------------------------------------------------------------
# Limit measures


@dataclass(frozen=True)
class LimitMeasure:
    i_lo: int
    i_hi: int
    values: tuple[Fraction, ...]
    target: Fraction
    verdict: str               # "converged" | "undetermined"
    limit: Fraction | None
    flag: VFlag | None
    lt_holds: bool | None      # m[xs] < target in the limit
    le_holds: bool | None      # m[xs] <= target in the limit
    note: str = ""

    def describe(self) -> str:
        if self.verdict != "converged":
            return f"Undetermined ({self.note})" if self.note else "Undetermined"
        return (f"limit {self.limit} flag {self.flag.value}; "
                f"m<{self.target}: {self.lt_holds}, m<={self.target}: {self.le_holds}")


def _boundary_verdicts(flag: VFlag) -> tuple[bool, bool]:
    # At measure exactly r:  m < r holds only under MINUS;
    #                        m <= r holds unless PLUS.
    return flag is VFlag.MINUS, flag is not VFlag.PLUS


def limit_measure(family: StructureFamily, phi: Formula, xs, r,
                  budget: Budget | None = None) -> LimitMeasure:
    """Track mu_i = measure of phi's extension over the tuple variables xs in
    each family structure, and decide approach to the target r.

    The verdict "converged" requires one-sided evidence on a monotone suffix
    covering at least half the range: all suffix values equal to r (flag DOT),
    or all above r, weakly decreasing, with the final gap at most half the
    suffix's initial gap (flag PLUS), or the mirror image (flag MINUS).  The
    verdict asserts the recorded evidence, not convergence beyond the range.
    """
    r = Fraction(r)
    xs = tuple(xs)
    extra = free_vars(phi) - set(xs)
    if extra:
        raise LimitError(f"free variables {sorted(extra)} outside the tuple {xs}")
    values = []
    for i in family.indices():
        m = family.at(i)
        ext = extension(m, phi, xs, budget=budget)
        values.append(measure(ext))
    values = tuple(values)
    count = len(values)
    need = max(2, (count + 1) // 2)

    def result(verdict, limit, flag, note=""):
        lt = le = None
        if verdict == "converged":
            lt, le = _boundary_verdicts(flag)
        return LimitMeasure(family.i_lo, family.i_hi, values, r, verdict,
                            limit, flag, lt, le, note)

    last = values[-1]
    if last == r:
        start = count
        while start > 0 and values[start - 1] == r:
            start -= 1
        if count - start >= need:
            return result("converged", r, VFlag.DOT)
        return result("undetermined", None, None,
                      f"tail equals {r} for only {count - start} of {count} indices")
    above = last > r
    start = count - 1
    while start > 0:
        prev, cur = values[start - 1], values[start]
        if (prev > r) is not above or prev == r:
            break
        if (prev < cur) if above else (prev > cur):
            break
        start -= 1
    suffix = values[start:]
    if len(suffix) < need:
        return result("undetermined", None, None,
                      f"one-sided monotone suffix covers only {len(suffix)} "
                      f"of {count} indices")
    gap0, gap1 = abs(suffix[0] - r), abs(suffix[-1] - r)
    if gap1 * 2 > gap0:
        return result("undetermined", None, None,
                      f"gap only shrank from {gap0} to {gap1}")
    return result("converged", r, VFlag.PLUS if above else VFlag.MINUS)


# ---------------------------------------------------------------------------
# Banach density and the finite shift comparison


def banach_density(elements, n_hi: int, l_min: int = 1) -> Fraction:
    """max over windows n <= x < m inside [1, n_hi] with m - n >= l_min of
    |E ∩ [n, m)| / (m - n), by exhaustive window scan.

    This is the density of the best window of length at least l_min — a
    lower bound for the upper Banach density of any extension of E.
    """
    e_set = frozenset(elements)
    if e_set and not all(1 <= x <= n_hi for x in e_set):
        raise LimitError(f"elements must lie in [1, {n_hi}]")
    if l_min < 1:
        raise LimitError("l_min must be >= 1")
    if n_hi < l_min:
        raise LimitError("window [1, n_hi] shorter than l_min")
    prefix = [0] * (n_hi + 1)
    for v in range(1, n_hi + 1):
        prefix[v] = prefix[v - 1] + (v in e_set)
    best_num, best_den = 0, 1
    for n in range(1, n_hi + 1):
        base = prefix[n - 1]
        for m in range(n + l_min, n_hi + 2):
            num = prefix[m - 1] - base
            den = m - n
            if num * best_den > best_num * den:
                best_num, best_den = num, den
    return Fraction(best_num, best_den)


def furstenberg_check(elements, n_hi: int, shifts) -> tuple[Fraction, Fraction, Fraction]:
    """Compare, for E ⊆ [1, n_hi] and a finite shift set U:

    - the cyclic density |{x : f^i(x) in E for all i in U}| / n_hi, where f is
      the successor on [1, n_hi] with wraparound, and
    - the plain density |{x : x + i in E for all i in U}| / n_hi,

    returning (cyclic, plain, max(U)/n_hi).  The two densities differ only at
    the max(U) points that wrap, so |cyclic - plain| <= max(U)/n_hi exactly.
    """
    e_set = frozenset(elements)
    shift_set = sorted(set(shifts))
    if not shift_set:
        raise LimitError("need at least one shift")
    if shift_set[0] < 0:
        raise LimitError("shifts must be >= 0")
    if shift_set[-1] >= n_hi:
        raise LimitError(f"max shift {shift_set[-1]} must be < n_hi = {n_hi}")
    if e_set and not all(1 <= x <= n_hi for x in e_set):
        raise LimitError(f"elements must lie in [1, {n_hi}]")
    cyclic = plain = 0
    for x in range(1, n_hi + 1):
        if all((x - 1 + i) % n_hi + 1 in e_set for i in shift_set):
            cyclic += 1
        if all(x + i in e_set for i in shift_set):
            plain += 1
    return (Fraction(cyclic, n_hi), Fraction(plain, n_hi),
            Fraction(shift_set[-1], n_hi))


# ---------------------------------------------------------------------------
# Family spec files


def parse_family(text: str, loader: Callable[[str], str] | None = None) -> StructureFamily:
    """Parse a family spec:

        family cyclic <i_lo> <i_hi> [predicate <name> <rule-id>]...
        family interval <E-file> <i_lo> <i_hi>

    For interval families the E-file is read through ``loader`` (default:
    the filesystem) and must contain whitespace-separated integers.
    """
    words = []
    for raw in text.splitlines():
        words.extend(raw.split("#", 1)[0].split())
    if len(words) < 2 or words[0] != "family":
        raise LimitError("family file must start with 'family cyclic|interval'")
    if words[1] == "cyclic":
        if len(words) < 4:
            raise LimitError("family cyclic needs <i_lo> <i_hi>")
        try:
            i_lo, i_hi = int(words[2]), int(words[3])
        except ValueError:
            raise LimitError("bad index bounds") from None
        rest = words[4:]
        predicates = {}
        while rest:
            if rest[0] != "predicate" or len(rest) < 3:
                raise LimitError(f"expected 'predicate <name> <rule-id>', "
                                 f"got {' '.join(rest[:3])!r}")
            predicates[rest[1]] = rest[2]
            rest = rest[3:]
        return cyclic_family(i_lo, i_hi, predicates)
    if words[1] == "interval":
        if len(words) != 5:
            raise LimitError("family interval needs <E-file> <i_lo> <i_hi>")
        path, lo_w, hi_w = words[2], words[3], words[4]
        try:
            i_lo, i_hi = int(lo_w), int(hi_w)
        except ValueError:
            raise LimitError("bad index bounds") from None
        if loader is None:
            def loader(p):
                with open(p, encoding="utf-8") as fh:
                    return fh.read()
        try:
            e_text = loader(path)
        except OSError as e:
            raise LimitError(f"cannot read E-file {path!r}: {e}") from None
        try:
            elements = {int(w) for w in e_text.split()}
        except ValueError:
            raise LimitError(f"E-file {path!r} must contain integers") from None
        return interval_family(elements, i_lo, i_hi)
    raise LimitError(f"unknown family kind {words[1]!r}")
