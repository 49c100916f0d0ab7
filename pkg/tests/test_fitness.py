import pytest
from hypothesis import given
from hypothesis import strategies as st

from divsel.fitness import (
    BitString,
    Dominance,
    ObjectiveVector,
    Problem,
    ProblemKind,
    compare,
    evaluate,
    front_vectors,
    is_good,
    is_pareto_optimal,
    l_attribute,
)

OMM = ProblemKind.ONE_MIN_MAX
LOTZ = ProblemKind.LOTZ


def bs(text):
    return BitString.from_string(text)


class TestEvaluate:
    def test_oneminmax_midpoint(self):
        assert evaluate(Problem(OMM, 8), bs("00101011")) == (4, 4)

    def test_lotz_midpoint(self):
        assert evaluate(Problem(LOTZ, 8), bs("11110000")) == (4, 4)

    def test_lotz_all_ones(self):
        assert evaluate(Problem(LOTZ, 8), bs("11111111")) == (8, 0)

    def test_lotz_hand_counted(self):
        assert evaluate(Problem(LOTZ, 4), bs("1101")) == (2, 0)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            evaluate(Problem(OMM, 5), bs("0011"))

    def test_matches_naive_count_exhaustively(self):
        n = 8
        for m in range(1 << n):
            genes = [(m >> j) & 1 for j in range(n)]
            ones = sum(genes)
            lo = 0
            while lo < n and genes[lo] == 1:
                lo += 1
            tz = 0
            while tz < n and genes[n - 1 - tz] == 0:
                tz += 1
            x = BitString(n, m)
            assert evaluate(Problem(OMM, n), x) == (ones, n - ones)
            assert evaluate(Problem(LOTZ, n), x) == (lo, tz)


@given(st.lists(st.sampled_from([0, 1]), min_size=1, max_size=200))
def test_oneminmax_objectives_sum_to_n(genes):
    x = BitString.from_genes(genes)
    f = evaluate(Problem(OMM, x.n), x)
    assert f.f1 + f.f2 == x.n


@given(st.lists(st.sampled_from([0, 1]), min_size=1, max_size=200))
def test_lotz_objectives_sum_at_most_n(genes):
    x = BitString.from_genes(genes)
    f = evaluate(Problem(LOTZ, x.n), x)
    assert f.f1 + f.f2 <= x.n
    assert f.f1 + f.f2 == l_attribute(x)


class TestCompare:
    @pytest.mark.parametrize(
        "a,b,expected",
        [
            ((3, 1), (2, 1), Dominance.DOMINATES),
            ((3, 1), (2, 2), Dominance.INCOMPARABLE),
            ((2, 2), (2, 2), Dominance.EQUAL),
            ((2, 1), (3, 1), Dominance.DOMINATED_BY),
        ],
    )
    def test_examples(self, a, b, expected):
        assert compare(ObjectiveVector(*a), ObjectiveVector(*b)) is expected

    def test_consistent_with_componentwise_on_all_small_vectors(self):
        # all objective vectors reachable at n <= 10 on either problem
        vectors = [
            ObjectiveVector(a, b) for a in range(11) for b in range(11) if a + b <= 10
        ]
        for a in vectors:
            for b in vectors:
                rel = compare(a, b)
                weakly_ab = a.f1 >= b.f1 and a.f2 >= b.f2
                weakly_ba = b.f1 >= a.f1 and b.f2 >= a.f2
                if weakly_ab and weakly_ba:
                    assert rel is Dominance.EQUAL
                elif weakly_ab:
                    assert rel is Dominance.DOMINATES
                elif weakly_ba:
                    assert rel is Dominance.DOMINATED_BY
                else:
                    assert rel is Dominance.INCOMPARABLE

    def test_antisymmetry_exhaustive(self):
        flipped = {
            Dominance.DOMINATES: Dominance.DOMINATED_BY,
            Dominance.DOMINATED_BY: Dominance.DOMINATES,
            Dominance.EQUAL: Dominance.EQUAL,
            Dominance.INCOMPARABLE: Dominance.INCOMPARABLE,
        }
        vectors = [ObjectiveVector(a, b) for a in range(7) for b in range(7)]
        for a in vectors:
            for b in vectors:
                assert compare(b, a) is flipped[compare(a, b)]

    def test_oneminmax_points_never_dominate(self):
        n = 9
        front = front_vectors(Problem(OMM, n))
        for a in front:
            for b in front:
                if a != b:
                    assert compare(a, b) is Dominance.INCOMPARABLE


class TestLAttribute:
    @pytest.mark.parametrize(
        "text,expected", [("11110000", 8), ("1101", 2), ("0110", 1)]
    )
    def test_examples(self, text, expected):
        assert l_attribute(bs(text)) == expected

    def test_l_equal_n_characterises_lotz_pareto_set(self):
        n = 9
        for m in range(1 << n):
            x = BitString(n, m)
            if l_attribute(x) == n:
                i = evaluate(Problem(LOTZ, n), x).f1
                assert x == bs("1" * i + "0" * (n - i))
                assert is_pareto_optimal(Problem(LOTZ, n), x)
            else:
                assert not is_pareto_optimal(Problem(LOTZ, n), x)


class TestIsGood:
    def test_missing_neighbour_vector(self):
        p = Problem(OMM, 4)
        assert is_good(p, bs("0011"), {(2, 2), (3, 1)}) is True

    def test_both_neighbours_covered(self):
        p = Problem(OMM, 4)
        assert is_good(p, bs("0011"), {(1, 3), (2, 2), (3, 1)}) is False

    def test_lotz_all_ones_single_neighbour(self):
        p = Problem(LOTZ, 4)
        assert is_good(p, bs("1111"), {(4, 0), (3, 1)}) is False

    def test_off_pareto_point_rejected(self):
        p = Problem(LOTZ, 4)
        with pytest.raises(ValueError):
            is_good(p, bs("0110"), {(2, 2)})

    def test_agrees_with_neighbourhood_scan(self):
        from oracles import FrontEnumeration, classify_good_bad
        from divsel.selection import RngStream

        rng = RngStream(2024)
        for kind in (OMM, LOTZ):
            for n in (3, 5, 8):
                p = Problem(kind, n)
                enum = FrontEnumeration(p)
                for _ in range(40):
                    size = 1 + rng.randbelow(len(enum.pareto_masks))
                    masks = sorted(enum.pareto_masks)
                    chosen = []
                    for _ in range(size):
                        chosen.append(masks[rng.randbelow(len(masks))])
                    chosen = sorted(set(chosen))
                    covered = {
                        tuple(evaluate(p, BitString(n, m))) for m in chosen
                    }
                    labels = classify_good_bad(p, chosen)
                    for m, label in zip(chosen, labels):
                        assert is_good(p, BitString(n, m), covered) == label


class TestBitString:
    def test_round_trip(self):
        x = bs("01101")
        assert x.genes() == (0, 1, 1, 0, 1)
        assert repr(x) == "BitString('01101')"
        assert len(x) == 5
        assert x[1] == 1 and x[3] == 0

    def test_flip_is_pure(self):
        x = bs("0000")
        y = x.flip(2)
        assert y == bs("0010")
        assert x == bs("0000")

    def test_validation(self):
        with pytest.raises(ValueError):
            BitString(0)
        with pytest.raises(ValueError):
            BitString(3, 8)
        with pytest.raises(ValueError):
            BitString.from_genes([0, 2])
        with pytest.raises(IndexError):
            bs("01").flip(2)
        with pytest.raises(AttributeError):
            bs("01").mask = 3

    def test_front_has_n_plus_one_vectors(self):
        for kind in (OMM, LOTZ):
            assert len(front_vectors(Problem(kind, 6))) == 7
