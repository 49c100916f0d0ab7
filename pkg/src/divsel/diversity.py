"""Per-individual diversity contributions over a non-dominated population.

Two scores are provided:

* hypervolume contribution (HVC): the area a point exclusively dominates
  relative to a reference point strictly below-left of the population;
* crowding distance contribution (CDC): the NSGA-II density measure,
  with the two boundary members pinned to infinity.

HVC values are computed in exact integer arithmetic so that equal-score
classes (which the greedier selection schemes key on) are never blurred
by floating-point ties. Infinity is an explicit sentinel, strictly above
every finite score.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence

from .archive import Individual
from .fitness import ObjectiveVector, Problem

INFINITY = float("inf")


@dataclass(frozen=True)
class ReferencePoint:
    r1: int
    r2: int


# Named anchors resolved against the problem size at run time. "asym" is the
# lopsided anchor that inflates the all-ones extreme's box just past its
# neighbour's, the ingredient of the NMUAR stagnation scenario.
_PRESETS: Dict[str, Callable[[int], ReferencePoint]] = {
    "unit": lambda n: ReferencePoint(-1, -1),
    "n": lambda n: ReferencePoint(-n, -n),
    "n2": lambda n: ReferencePoint(-n * n, -n * n),
    "asym": lambda n: ReferencePoint(-1, -(n + 1)),
}


@dataclass(frozen=True)
class RefSpec:
    """Reference-point policy: a named preset or a fixed pair."""

    preset: Optional[str] = None
    point: Optional[ReferencePoint] = None

    def __post_init__(self) -> None:
        if (self.preset is None) == (self.point is None):
            raise ValueError("exactly one of preset/point must be given")
        if self.preset is not None and self.preset not in _PRESETS:
            raise ValueError(
                f"unknown reference preset {self.preset!r}; "
                f"choose from {sorted(_PRESETS)} or give a fixed point"
            )

    @classmethod
    def named(cls, preset: str) -> "RefSpec":
        return cls(preset=preset)

    @classmethod
    def fixed(cls, r1: int, r2: int) -> "RefSpec":
        return cls(point=ReferencePoint(r1, r2))

    def resolve(self, n: int) -> ReferencePoint:
        if self.point is not None:
            return self.point
        return _PRESETS[self.preset](n)

    def token(self) -> str:
        if self.preset is not None:
            return self.preset
        return f"{self.point.r1},{self.point.r2}"


class MetricKind(Enum):
    HVC = "hvc"
    CDC = "cdc"


@dataclass(frozen=True)
class DiversityMetric:
    kind: MetricKind
    ref: Optional[RefSpec] = None

    def __post_init__(self) -> None:
        if self.kind is MetricKind.HVC and self.ref is None:
            raise ValueError("HVC metric needs a reference-point policy")
        if self.kind is MetricKind.CDC and self.ref is not None:
            raise ValueError("CDC metric takes no reference point")

    @classmethod
    def hvc(cls, ref: RefSpec) -> "DiversityMetric":
        return cls(MetricKind.HVC, ref)

    @classmethod
    def cdc(cls) -> "DiversityMetric":
        return cls(MetricKind.CDC)

    def token(self) -> str:
        if self.kind is MetricKind.CDC:
            return "cdc"
        return f"hvc[{self.ref.token()}]"


# -- raw-list kernels (the generation loop calls these directly) -------------


def hvc_from_lists(f1s: Sequence[int], f2s: Sequence[int], r1: int, r2: int) -> List[int]:
    # callers guarantee strict f1 ascent; only the O(1) anchor check is done here
    if f1s and (r1 >= f1s[0] or r2 >= f2s[-1]):
        raise ValueError(
            f"reference point ({r1},{r2}) is not strictly below-left of the population"
        )
    k = len(f1s)
    out = []
    prev = r1
    for i in range(k):
        nxt = f2s[i + 1] if i + 1 < k else r2
        out.append((f1s[i] - prev) * (f2s[i] - nxt))
        prev = f1s[i]
    return out


def cdc_from_lists(f1s: Sequence[int], f2s: Sequence[int]) -> List[float]:
    k = len(f1s)
    if k <= 2:
        return [INFINITY] * k
    out = [0.0] * k
    out[0] = out[-1] = INFINITY
    f1_range = f1s[-1] - f1s[0]
    f2_range = f2s[0] - f2s[-1]
    for i in range(1, k - 1):
        out[i] = (f1s[i + 1] - f1s[i - 1]) / f1_range + (f2s[i - 1] - f2s[i + 1]) / f2_range
    return out


def _split_sorted(objectives: Sequence[ObjectiveVector]) -> tuple:
    f1s = []
    f2s = []
    prev = None
    for vec in objectives:
        a, b = vec
        if prev is not None and (a <= prev[0] or b >= prev[1]):
            raise ValueError(
                "population must be strictly ascending in f1 and descending in f2 "
                f"(offending pair: {prev} then {(a, b)})"
            )
        f1s.append(a)
        f2s.append(b)
        prev = (a, b)
    return f1s, f2s


# -- public operations -------------------------------------------------------


def hvc_scores(
    sorted_objectives: Sequence[ObjectiveVector], ref: ReferencePoint
) -> List[int]:
    """Rectangle contribution of each point, left-to-right along the front.

    score[i] = (f1[i] - f1[i-1]) * (f2[i] - f2[i+1]) with the reference
    coordinates standing in for the missing outer neighbours. Equals the
    hypervolume lost by deleting the point.
    """
    f1s, f2s = _split_sorted(sorted_objectives)
    return hvc_from_lists(f1s, f2s, ref.r1, ref.r2)


def hypervolume(objectives, ref: ReferencePoint) -> int:
    """Exact area of the union of boxes spanned by ``ref`` and each point."""
    pts = sorted(set((a, b) for a, b in objectives))
    if not pts:
        return 0
    if any(a < ref.r1 or b < ref.r2 for a, b in pts):
        raise ValueError("reference point must be weakly below-left of all points")
    # peel the staircase: scan by descending f1, keep strictly rising f2
    kept = []
    best_f2 = None
    for a, b in reversed(pts):
        if best_f2 is None or b > best_f2:
            kept.append((a, b))
            best_f2 = b
    kept.reverse()
    area = 0
    prev = ref.r1
    for a, b in kept:
        area += (a - prev) * (b - ref.r2)
        prev = a
    return area


def cdc_scores(sorted_objectives: Sequence[ObjectiveVector]) -> List[float]:
    """Crowding distance per point; the two boundary members get infinity.

    Interior point i accumulates, per objective, the neighbour difference
    normalised by that objective's population range. Populations of size
    one or two are all boundary.
    """
    f1s, f2s = _split_sorted(sorted_objectives)
    return cdc_from_lists(f1s, f2s)


def scores(metric: DiversityMetric, population: Sequence, problem: Problem) -> List:
    """Dispatch to HVC (resolving the reference policy against n) or CDC.

    ``population`` may hold Individuals or bare objective vectors, sorted
    ascending in f1.
    """
    objectives = [
        p.objectives if isinstance(p, Individual) else p for p in population
    ]
    if metric.kind is MetricKind.HVC:
        ref = metric.ref.resolve(problem.n)
        return hvc_scores(objectives, ref)
    return cdc_scores(objectives)
