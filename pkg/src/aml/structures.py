"""Finite measured structures with exact rational product measures.

A structure has universe {0, ..., n-1}, interpretations for constants, total
functions and relations, and a unary weight vector w (default: normalized
counting, w(a) = 1/n).  The measure of A ⊆ M^k is the product-weight sum
Σ_{a in A} Π_i w(a_i), so the arity-(m+n) measure extends the product of the
arity-m and arity-n measures by construction.

Definable sets are stored as bitsets over M^k in lexicographic tuple order
(leftmost coordinate most significant).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction


class VFlag(Enum):
    """Approximation flag for a measure value: known from above (PLUS), from
    below (MINUS), or exactly (DOT).  Concrete finite structures carry DOT on
    every set; PLUS/MINUS arise only as limits of structure sequences."""

    PLUS = "+"
    MINUS = "-"
    DOT = "."


@dataclass(frozen=True)
class FiniteStructure:
    n: int
    constants: dict[str, int] = field(default_factory=dict)
    # name -> (arity, flat result table in lexicographic argument order)
    functions: dict[str, tuple[int, tuple[int, ...]]] = field(default_factory=dict)
    # name -> (arity, frozenset of argument tuples)
    relations: dict[str, tuple[int, frozenset[tuple[int, ...]]]] = field(default_factory=dict)
    weights: tuple[Fraction, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("universe must be nonempty")
        if not self.weights:
            object.__setattr__(self, "weights", (Fraction(1, self.n),) * self.n)
        if len(self.weights) != self.n:
            raise ValueError(f"weight vector has {len(self.weights)} entries, universe size is {self.n}")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        for name, e in self.constants.items():
            if not 0 <= e < self.n:
                raise ValueError(f"constant {name!r} = {e} out of range")
        for name, (arity, table) in self.functions.items():
            if len(table) != self.n ** arity:
                raise ValueError(f"function {name!r} table is not total "
                                 f"({len(table)} entries, need {self.n ** arity})")
            if any(not 0 <= v < self.n for v in table):
                raise ValueError(f"function {name!r} has out-of-range results")
        for name, (arity, tuples) in self.relations.items():
            for tup in tuples:
                if len(tup) != arity or any(not 0 <= v < self.n for v in tup):
                    raise ValueError(f"relation {name!r} has an invalid tuple {tup}")

    # -- signature ---------------------------------------------------------

    def signature(self):
        from .syntax import Signature
        return Signature(
            constants=tuple(sorted(self.constants)),
            functions=tuple(sorted((n, a) for n, (a, _) in self.functions.items())),
            relations=tuple(sorted((n, a) for n, (a, _) in self.relations.items())),
        )

    # -- weights -----------------------------------------------------------

    @property
    def total_mass(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    @property
    def uniform_weight(self) -> Fraction | None:
        """The common weight if all elements weigh the same, else None."""
        w0 = self.weights[0]
        return w0 if all(w == w0 for w in self.weights) else None

    def apply_function(self, name: str, args: tuple[int, ...]) -> int:
        arity, table = self.functions[name]
        idx = 0
        for a in args:
            idx = idx * self.n + a
        return table[idx]

    def holds_relation(self, name: str, args: tuple[int, ...]) -> bool:
        return args in self.relations[name][1]

    # -- tuple indexing ----------------------------------------------------

    def tuple_index(self, tup: tuple[int, ...]) -> int:
        idx = 0
        for a in tup:
            idx = idx * self.n + a
        return idx

    def index_tuple(self, idx: int, arity: int) -> tuple[int, ...]:
        out = []
        for _ in range(arity):
            out.append(idx % self.n)
            idx //= self.n
        return tuple(reversed(out))

    def all_tuples(self, arity: int):
        return itertools.product(range(self.n), repeat=arity)

    # -- definable sets ----------------------------------------------------

    def empty_set(self, arity: int) -> "DefinableSet":
        return DefinableSet(self, arity, 0)

    def full_set(self, arity: int) -> "DefinableSet":
        return DefinableSet(self, arity, (1 << self.n ** arity) - 1)

    def set_of(self, arity: int, tuples) -> "DefinableSet":
        bits = 0
        for tup in tuples:
            bits |= 1 << self.tuple_index(tup)
        return DefinableSet(self, arity, bits)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def counting(n: int, constants=None, functions=None, relations=None) -> "FiniteStructure":
        return FiniteStructure(n, dict(constants or {}), dict(functions or {}),
                               dict(relations or {}))


@dataclass(frozen=True)
class DefinableSet:
    """A subset of M^arity stored as a bitset (bit i <-> the i-th tuple in
    lexicographic order)."""

    structure: FiniteStructure
    arity: int
    bits: int

    def __post_init__(self):
        size = self.structure.n ** self.arity
        if self.bits < 0 or self.bits >> size:
            raise ValueError("bitset out of range for this arity")

    def _check_same(self, other: "DefinableSet") -> None:
        if self.structure is not other.structure and self.structure != other.structure:
            raise ValueError("sets belong to different structures")
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __contains__(self, tup) -> bool:
        return bool(self.bits >> self.structure.tuple_index(tuple(tup)) & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def tuples(self):
        bits = self.bits
        while bits:
            low = bits & -bits
            yield self.structure.index_tuple(low.bit_length() - 1, self.arity)
            bits ^= low

    def union(self, other: "DefinableSet") -> "DefinableSet":
        self._check_same(other)
        return DefinableSet(self.structure, self.arity, self.bits | other.bits)

    def intersection(self, other: "DefinableSet") -> "DefinableSet":
        self._check_same(other)
        return DefinableSet(self.structure, self.arity, self.bits & other.bits)

    def difference(self, other: "DefinableSet") -> "DefinableSet":
        self._check_same(other)
        return DefinableSet(self.structure, self.arity, self.bits & ~other.bits)

    def complement(self) -> "DefinableSet":
        full = (1 << self.structure.n ** self.arity) - 1
        return DefinableSet(self.structure, self.arity, full & ~self.bits)

    def product(self, other: "DefinableSet") -> "DefinableSet":
        """Cartesian product A x B as a set of arity |A|+|B|."""
        if self.structure is not other.structure and self.structure != other.structure:
            raise ValueError("sets belong to different structures")
        shift = other.structure.n ** other.arity
        bits = 0
        a = self.bits
        while a:
            low = a & -a
            i = low.bit_length() - 1
            bits |= other.bits << i * shift
            a ^= low
        return DefinableSet(self.structure, self.arity + other.arity, bits)

    def slice_prefix(self, prefix: tuple[int, ...]) -> "DefinableSet":
        """The fiber {b : prefix + b in A} as a set of arity |A| - |prefix|."""
        rest = self.arity - len(prefix)
        if rest < 0:
            raise ValueError("prefix longer than arity")
        block = self.structure.n ** rest
        start = self.structure.tuple_index(prefix) * block
        bits = self.bits >> start & (1 << block) - 1
        return DefinableSet(self.structure, rest, bits)


def measure(s: DefinableSet) -> Fraction:
    """Exact product-weight measure of a definable set."""
    m = s.structure
    w0 = m.uniform_weight
    if w0 is not None:
        return len(s) * w0 ** s.arity
    total = Fraction(0)
    for tup in s.tuples():
        prod = Fraction(1)
        for a in tup:
            prod *= m.weights[a]
        total += prod
    return total


def product_measure_check(a: DefinableSet, b: DefinableSet) -> bool:
    """Whether μ(A×B) = μ(A)·μ(B) exactly (true by construction; exposed as a
    test oracle)."""
    return measure(a.product(b)) == measure(a) * measure(b)
