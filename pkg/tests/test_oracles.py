from fractions import Fraction
from itertools import product

from divsel.diversity import INFINITY, ReferencePoint, hypervolume
from divsel.fitness import BitString, Problem, ProblemKind, evaluate

from oracles import (
    FrontEnumeration,
    brute_nondominated_insert,
    classify_good_bad,
    exact_selection_distribution,
    grid_hypervolume,
)
from divsel.selection import SelectionScheme

S = SelectionScheme
OMM = ProblemKind.ONE_MIN_MAX
LOTZ = ProblemKind.LOTZ


class TestGridHypervolume:
    def test_single_box(self):
        assert grid_hypervolume([(2, 2)], (-1, -1)) == 9

    def test_two_boxes(self):
        assert grid_hypervolume([(0, 4), (4, 0)], (-1, -1)) == 9

    def test_full_front_n4(self):
        # staircase strips of heights 5,4,3,2,1 from the unit anchor
        front = [(i, 4 - i) for i in range(5)]
        assert grid_hypervolume(front, (-1, -1)) == 15
        assert hypervolume(front, ReferencePoint(-1, -1)) == 15

    def test_agrees_with_sweep_on_random_sets(self):
        from divsel.selection import RngStream

        rng = RngStream(8)
        for _ in range(100):
            pts = {(rng.randbelow(8), rng.randbelow(8)) for _ in range(1 + rng.randbelow(6))}
            ref = ReferencePoint(-1 - rng.randbelow(4), -1 - rng.randbelow(4))
            assert grid_hypervolume(pts, ref) == hypervolume(pts, ref)


class TestFrontEnumeration:
    def test_sizes(self):
        for kind in (OMM, LOTZ):
            for n in (1, 4, 8):
                enum = FrontEnumeration(Problem(kind, n))
                assert len(enum.front_vectors) == n + 1

    def test_lotz_pareto_set_shape(self):
        n = 6
        enum = FrontEnumeration(Problem(LOTZ, n))
        expected = {
            BitString.from_string("1" * i + "0" * (n - i)).mask for i in range(n + 1)
        }
        assert enum.mask_set == expected

    def test_oneminmax_everything_is_optimal(self):
        n = 5
        enum = FrontEnumeration(Problem(OMM, n))
        assert len(enum.pareto_masks) == 1 << n


class TestBruteNonDominatedInsert:
    def test_keeps_incomparable_drops_dominated(self):
        got = brute_nondominated_insert([(2, 2), (3, 1), (1, 1), (3, 2)])
        assert got == [(3, 2)] or (3, 2) in got
        assert got == sorted(got)

    def test_equal_vector_is_not_duplicated(self):
        got = brute_nondominated_insert([(2, 2), (2, 2)])
        assert got == [(2, 2)]


class TestExactSelectionDistribution:
    def test_hdc_tie(self):
        assert exact_selection_distribution(S.HDC, [1, 7, 7]) == [
            0,
            Fraction(1, 2),
            Fraction(1, 2),
        ]

    def test_tournament_two_distinct(self):
        assert exact_selection_distribution(S.TOURNAMENT_MU, [3, 9]) == [
            Fraction(1, 4),
            Fraction(3, 4),
        ]

    def test_nmuar(self):
        assert exact_selection_distribution(S.NMUAR, [1, 1, 5, 9]) == [
            0,
            0,
            Fraction(1, 2),
            Fraction(1, 2),
        ]

    def test_rank_scheme_tie_class_split(self):
        got = exact_selection_distribution(S.EXPONENTIAL, [9, 9, 1])
        top = Fraction(1, 2) + Fraction(1, 4)
        total = top + Fraction(1, 8)
        assert got == [top / total / 2, top / total / 2, Fraction(1, 8) / total]

    def test_distributions_sum_to_one(self):
        for scheme in S:
            for scores in ([4], [1, 2, 3], [5, 5, 5], [INFINITY, 2, 2, 9]):
                assert sum(exact_selection_distribution(scheme, scores)) == 1

    def test_tournament_class_formula_matches_full_enumeration(self):
        # mu^mu sequences, any position-symmetric tie-break gives this marginal
        for scores in ([5, 5, 2], [4, 4, 4], [1, 2, 2]):
            mu = len(scores)
            counts = [Fraction(0)] * mu
            for draws in product(range(mu), repeat=mu):
                best = max(scores[d] for d in draws)
                winners = [d for d in draws if scores[d] == best]
                for w in winners:
                    counts[w] += Fraction(1, len(winners))
            total = Fraction(mu**mu)
            expected = [c / total for c in counts]
            assert exact_selection_distribution(S.TOURNAMENT_MU, scores) == expected


class TestClassifyGoodBad:
    def test_lone_member_is_good(self):
        p = Problem(OMM, 4)
        enum = FrontEnumeration(p)
        mask = BitString.from_string("0101").mask
        assert classify_good_bad(p, [mask]) == [True]

    def test_full_front_all_bad(self):
        n = 4
        p = Problem(LOTZ, n)
        masks = [BitString.from_string("1" * i + "0" * (n - i)).mask for i in range(n + 1)]
        assert classify_good_bad(p, masks) == [False] * (n + 1)

    def test_lotz_pair(self):
        p = Problem(LOTZ, 4)
        all_ones = BitString.from_string("1111").mask
        almost = BitString.from_string("1110").mask
        labels = classify_good_bad(p, [all_ones, almost])
        assert labels == [False, True]

    def test_off_pareto_member_rejected(self):
        p = Problem(LOTZ, 4)
        try:
            classify_good_bad(p, [BitString.from_string("0110").mask])
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")
