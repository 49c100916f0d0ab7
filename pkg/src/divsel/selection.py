"""Parent-selection mechanisms over a diversity-scored population.

Rank-based schemes (exponential / power-law / harmonic) order the
population by non-increasing score, break ties by a fresh uniform
permutation within each tie class, and then sample a rank:

    exponential  p_i ~ 2^-i
    power law    p_i ~ 1/i^2
    harmonic     p_i ~ 1/i

Tournament draws mu candidates with replacement and keeps a best-scored
draw. HDC picks uniformly among the argmax-score members; NMUAR picks
uniformly among members scoring strictly above the minimum, falling back
to plain uniform when every score is equal.
"""

from __future__ import annotations

from bisect import bisect_right
from enum import Enum
from functools import lru_cache
from typing import List, Optional, Sequence


class SelectionScheme(Enum):
    UNIFORM = "uniform"
    EXPONENTIAL = "exponential"
    POWER_LAW = "powerlaw"
    HARMONIC = "harmonic"
    TOURNAMENT_MU = "tournament"
    HDC = "hdc"
    NMUAR = "nmuar"


_RANK_SCHEMES = (
    SelectionScheme.EXPONENTIAL,
    SelectionScheme.POWER_LAW,
    SelectionScheme.HARMONIC,
)

_INV_2_53 = 2.0 ** -53


class RngStream:
    """Deterministic pseudorandom stream with a 64-bit seed.

    Every draw is built on MT19937 ``getrandbits`` only, so a given seed
    yields the same sequence on any platform and Python >= 3.10.
    """

    __slots__ = ("_getrandbits",)

    def __init__(self, seed: int):
        import random as _random

        self._getrandbits = _random.Random(seed & 0xFFFFFFFFFFFFFFFF).getrandbits

    def getrandbits(self, k: int) -> int:
        return self._getrandbits(k)

    def random(self) -> float:
        return self._getrandbits(53) * _INV_2_53

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection sampling."""
        if n <= 0:
            raise ValueError(f"randbelow needs n >= 1, got {n}")
        if n == 1:
            return 0
        k = (n - 1).bit_length()
        grb = self._getrandbits
        r = grb(k)
        while r >= n:
            r = grb(k)
        return r

    def shuffle(self, xs: list) -> None:
        for i in range(len(xs) - 1, 0, -1):
            j = self.randbelow(i + 1)
            xs[i], xs[j] = xs[j], xs[i]

    def choice(self, xs: Sequence):
        return xs[self.randbelow(len(xs))]


def rank_probabilities(scheme: SelectionScheme, mu: int) -> List[float]:
    """Selection probability of each rank 1..mu under a rank-based scheme."""
    if scheme not in _RANK_SCHEMES:
        raise ValueError(f"{scheme} is not a rank-based scheme")
    if mu < 1:
        raise ValueError(f"population size must be >= 1, got {mu}")
    if scheme is SelectionScheme.EXPONENTIAL:
        weights = [2.0 ** -i for i in range(1, mu + 1)]
    elif scheme is SelectionScheme.POWER_LAW:
        weights = [1.0 / (i * i) for i in range(1, mu + 1)]
    else:
        weights = [1.0 / i for i in range(1, mu + 1)]
    total = sum(weights)
    return [w / total for w in weights]


@lru_cache(maxsize=1024)
def _rank_cdf(scheme: SelectionScheme, mu: int) -> tuple:
    probs = rank_probabilities(scheme, mu)
    acc = 0.0
    cdf = []
    for p in probs:
        acc += p
        cdf.append(acc)
    cdf[-1] = 1.0
    return tuple(cdf)


def rank_by_score(scores: Sequence, rng: RngStream) -> List[int]:
    """Indices ordered by non-increasing score, tie classes shuffled uniformly."""
    order = sorted(range(len(scores)), key=scores.__getitem__, reverse=True)
    k = len(order)
    i = 0
    while i < k:
        si = scores[order[i]]
        j = i + 1
        while j < k and scores[order[j]] == si:
            j += 1
        if j - i > 1:
            seg = order[i:j]
            rng.shuffle(seg)
            order[i:j] = seg
        i = j
    return order


def select_parent(
    scheme: SelectionScheme,
    mu: int,
    scores: Optional[Sequence],
    rng: RngStream,
) -> int:
    """Pick a parent index from a population of size ``mu``.

    ``scores`` aligns with population order and is ignored (may be None)
    for uniform selection; every other scheme requires one score per
    member.
    """
    if mu < 1:
        raise ValueError(f"population size must be >= 1, got {mu}")
    if scheme is SelectionScheme.UNIFORM:
        return rng.randbelow(mu)
    if scores is None or len(scores) != mu:
        raise ValueError("scored selection needs exactly one score per member")

    if scheme is SelectionScheme.HDC:
        best = max(scores)
        pool = [i for i, s in enumerate(scores) if s == best]
        return pool[rng.randbelow(len(pool))]

    if scheme is SelectionScheme.NMUAR:
        worst = min(scores)
        if max(scores) == worst:
            return rng.randbelow(mu)
        pool = [i for i, s in enumerate(scores) if s > worst]
        return pool[rng.randbelow(len(pool))]

    if scheme is SelectionScheme.TOURNAMENT_MU:
        rb = rng.randbelow
        draws = [rb(mu) for _ in range(mu)]
        best = max(scores[d] for d in draws)
        winners = [d for d in draws if scores[d] == best]
        return winners[rb(len(winners))]

    order = rank_by_score(scores, rng)
    rank = bisect_right(_rank_cdf(scheme, mu), rng.random())
    if rank >= mu:  # guard against fp round-up at the tail
        rank = mu - 1
    return order[rank]
