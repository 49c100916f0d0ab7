"""Non-dominated population archive with sorted-by-f1 storage.

The archive accepts an offspring unless a member weakly dominates it, so
an offspring whose objective vector is already present keeps the
incumbent genotype; on acceptance every member the offspring weakly
dominates is removed. Members are kept strictly ascending in f1 (hence
strictly descending in f2), which gives binary-search insertion and the
neighbour structure needed by the diversity scores.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import List, NamedTuple

from .fitness import BitString, ObjectiveVector, Problem, ProblemKind, evaluate


class InsertOutcome(NamedTuple):
    accepted: bool
    removed_count: int


class Individual(NamedTuple):
    genotype: BitString
    objectives: ObjectiveVector


class Archive:
    """The population: mutually non-dominated, at most one member per vector."""

    __slots__ = ("problem", "_n", "_f1s", "_f2s", "_genos", "_front_count")

    def __init__(self, problem: Problem):
        self.problem = problem
        self._n = problem.n
        self._f1s: List[int] = []
        self._f2s: List[int] = []
        self._genos: List[int] = []
        # members with f1+f2 == n sit on the Pareto front for both benchmarks
        self._front_count = 0

    def __len__(self) -> int:
        return len(self._f1s)

    @property
    def members(self) -> List[Individual]:
        n = self._n
        return [
            Individual(BitString(n, g), ObjectiveVector(a, b))
            for g, a, b in zip(self._genos, self._f1s, self._f2s)
        ]

    def objective_vectors(self) -> List[ObjectiveVector]:
        return [ObjectiveVector(a, b) for a, b in zip(self._f1s, self._f2s)]

    @property
    def front_coverage(self) -> int:
        """Number of Pareto-front objective vectors currently present."""
        return self._front_count

    def insert_values(self, mask: int, f1: int, f2: int) -> tuple:
        """Insertion kernel on raw values; returns (accepted, removed_count).

        Fast path used once per generation; ``try_insert`` wraps it.
        """
        f1s = self._f1s
        f2s = self._f2s
        k = len(f1s)
        i = bisect_left(f1s, f1)
        # the member with the smallest f1 >= ours carries the largest f2 on
        # that side; it weakly dominates us iff anything does
        if i < k and f2s[i] >= f2:
            return False, 0
        # dominated members: a suffix of those left of i, plus the member
        # sharing our f1 (its f2 is strictly below ours once we got here)
        hi = i + 1 if i < k and f1s[i] == f1 else i
        lo = i
        while lo > 0 and f2s[lo - 1] <= f2:
            lo -= 1
        removed = hi - lo
        if removed:
            n = self._n
            fc = self._front_count
            for t in range(lo, hi):
                if f1s[t] + f2s[t] == n:
                    fc -= 1
            self._front_count = fc
        f1s[lo:hi] = (f1,)
        f2s[lo:hi] = (f2,)
        self._genos[lo:hi] = (mask,)
        if f1 + f2 == self._n:
            self._front_count += 1
        return True, removed

    def try_insert(self, s: Individual) -> InsertOutcome:
        """Offer ``s`` to the archive.

        Rejected when some member weakly dominates ``s`` (in particular,
        a duplicate objective vector leaves the incumbent in place);
        otherwise ``s`` enters and every member it weakly dominates is
        dropped.
        """
        geno, obj = s
        if geno.n != self._n:
            raise ValueError(f"genotype length {geno.n} != problem size {self._n}")
        if evaluate(self.problem, geno) != obj:
            raise ValueError("cached objectives do not match the genotype")
        accepted, removed = self.insert_values(geno.mask, obj[0], obj[1])
        return InsertOutcome(accepted, removed)

    def covers_full_front(self) -> bool:
        return self._front_count == self._n + 1

    def max_l_subset(self) -> List[Individual]:
        """Members attaining the maximal leading-ones + trailing-zeros value.

        Only meaningful for LOTZ, where that value is f1 + f2.
        """
        if self.problem.kind is not ProblemKind.LOTZ:
            raise ValueError("max_l_subset is defined for LOTZ archives only")
        if not self._f1s:
            return []
        n = self._n
        sums = [a + b for a, b in zip(self._f1s, self._f2s)]
        best = max(sums)
        return [
            Individual(BitString(n, g), ObjectiveVector(a, b))
            for g, a, b, s in zip(self._genos, self._f1s, self._f2s, sums)
            if s == best
        ]

    def gap_positions(self) -> List[int]:
        """Uncovered front indices strictly between two covered ones."""
        n = self._n
        covered = [a for a, b in zip(self._f1s, self._f2s) if a + b == n]
        gaps: List[int] = []
        for prev, nxt in zip(covered, covered[1:]):
            gaps.extend(range(prev + 1, nxt))
        return gaps
