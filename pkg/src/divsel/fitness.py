"""Bi-objective bitstring benchmarks and Pareto dominance primitives.

Two maximisation problems over {0,1}^n are provided:

* ``ONE_MIN_MAX`` -- (number of ones, number of zeros); every bitstring is
  Pareto optimal and the front consists of the n+1 vectors (i, n-i).
* ``LOTZ`` -- (leading ones, trailing zeros); the Pareto set is exactly
  the n+1 strings of the form 1^i 0^(n-i).

Genotypes are packed into Python ints (gene j <-> bit j), which gives O(1)
single-bit flips and O(n/word) evaluation; both matter because optimiser
runs execute up to 10^6 generations each.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple, Set


class ProblemKind(Enum):
    ONE_MIN_MAX = "oneminmax"
    LOTZ = "lotz"


@dataclass(frozen=True)
class Problem:
    """A benchmark instance: which function, and the string length n."""

    kind: ProblemKind
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"problem size must be >= 1, got {self.n}")


class ObjectiveVector(NamedTuple):
    f1: int
    f2: int


class Dominance(Enum):
    DOMINATES = "dominates"
    DOMINATED_BY = "dominated_by"
    INCOMPARABLE = "incomparable"
    EQUAL = "equal"


class BitString:
    """Fixed-length binary string backed by an int mask (gene j is bit j).

    Instances are immutable; ``flip`` returns a new string. The textual
    form reads left to right, so ``BitString.from_string("1101")`` has
    gene 0 == 1 and gene 3 == 1.
    """

    __slots__ = ("n", "mask")

    def __init__(self, n: int, mask: int = 0):
        if n < 1:
            raise ValueError(f"bitstring length must be >= 1, got {n}")
        if not 0 <= mask < (1 << n):
            raise ValueError(f"mask {mask:#x} does not fit in {n} bits")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("BitString is immutable")

    @classmethod
    def from_genes(cls, genes: Iterable[int]) -> "BitString":
        mask = 0
        n = 0
        for j, g in enumerate(genes):
            if g not in (0, 1):
                raise ValueError(f"gene {j} is {g!r}, expected 0 or 1")
            mask |= g << j
            n = j + 1
        return cls(n, mask)

    @classmethod
    def from_string(cls, text: str) -> "BitString":
        return cls.from_genes(int(c) for c in text)

    def flip(self, i: int) -> "BitString":
        """Return a copy with gene i flipped (O(1))."""
        if not 0 <= i < self.n:
            raise IndexError(f"gene index {i} out of range for length {self.n}")
        return BitString(self.n, self.mask ^ (1 << i))

    def genes(self) -> tuple:
        return tuple((self.mask >> j) & 1 for j in range(self.n))

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.n:
            raise IndexError(j)
        return (self.mask >> j) & 1

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitString)
            and self.n == other.n
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.n, self.mask))

    def __repr__(self) -> str:
        return f"BitString('{''.join(str(g) for g in self.genes())}')"


# -- mask-level kernels (used directly by the generation loop) --------------


def ones_of(mask: int) -> int:
    return mask.bit_count()


def leading_ones_of(mask: int) -> int:
    # run of 1-genes from gene 0 == run of trailing one-bits of the mask
    return (mask ^ (mask + 1)).bit_length() - 1


def trailing_zeros_of(mask: int, n: int) -> int:
    # run of 0-genes ending at gene n-1 == zero bits above the top set bit
    return n - mask.bit_length()


def evaluate_mask(kind: ProblemKind, n: int, mask: int) -> tuple:
    if kind is ProblemKind.ONE_MIN_MAX:
        ones = mask.bit_count()
        return ones, n - ones
    return (mask ^ (mask + 1)).bit_length() - 1, n - mask.bit_length()


# -- public operations -------------------------------------------------------


def evaluate(problem: Problem, x: BitString) -> ObjectiveVector:
    """Evaluate both objectives of ``x`` under ``problem``.

    Raises ValueError when the string length does not match the problem.
    """
    if x.n != problem.n:
        raise ValueError(f"bitstring length {x.n} != problem size {problem.n}")
    return ObjectiveVector(*evaluate_mask(problem.kind, problem.n, x.mask))


def compare(a: ObjectiveVector, b: ObjectiveVector) -> Dominance:
    """Pareto-compare two objective vectors (maximisation in both)."""
    if a == b:
        return Dominance.EQUAL
    if a[0] >= b[0] and a[1] >= b[1]:
        return Dominance.DOMINATES
    if b[0] >= a[0] and b[1] >= a[1]:
        return Dominance.DOMINATED_BY
    return Dominance.INCOMPARABLE


def l_attribute(x: BitString) -> int:
    """Leading ones plus trailing zeros; equals n exactly on the LOTZ Pareto set."""
    return leading_ones_of(x.mask) + trailing_zeros_of(x.mask, x.n)


def is_pareto_optimal(problem: Problem, x: BitString) -> bool:
    if x.n != problem.n:
        raise ValueError(f"bitstring length {x.n} != problem size {problem.n}")
    if problem.kind is ProblemKind.ONE_MIN_MAX:
        return True
    return l_attribute(x) == problem.n


def front_vectors(problem: Problem) -> list:
    """The n+1 Pareto-front objective vectors, ascending in f1."""
    n = problem.n
    return [ObjectiveVector(i, n - i) for i in range(n + 1)]


def is_good(problem: Problem, x: BitString, front_values: Set[ObjectiveVector]) -> bool:
    """Does ``x`` have a Pareto-set Hamming neighbour whose vector is uncovered?

    ``front_values`` is the set of objective vectors currently present in
    the population. ``x`` must itself be Pareto optimal.

    For both benchmarks the only Pareto-set neighbours of a Pareto-optimal
    point with front index i are the points with index i-1 and i+1, so no
    neighbourhood scan is needed.
    """
    if not is_pareto_optimal(problem, x):
        raise ValueError("is_good requires a Pareto-optimal point")
    n = problem.n
    if problem.kind is ProblemKind.ONE_MIN_MAX:
        i = ones_of(x.mask)
    else:
        i = leading_ones_of(x.mask)
    if i > 0 and (i - 1, n - i + 1) not in front_values:
        return True
    if i < n and (i + 1, n - i - 1) not in front_values:
        return True
    return False
