from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import all_graphs
from gccd.coloring import chromatic_number
from gccd.counting import (
    DyadicProbability,
    PartitionSpec,
    PowerOfTwoCount,
    cross_pairs_exponent,
    gamma_max,
    gamma_partition,
    gamma_total,
    oracle_fixed_partition_count,
    oracle_spectrum,
    overhead_ratio,
    p1_bound,
    partitions_into,
    set_partitions,
    verify_theorem_bound,
)

P = PartitionSpec


@pytest.mark.parametrize("m,e", [(3, 3), (4, 6), (1, 0)])
def test_gamma_total(m, e):
    assert gamma_total(m) == PowerOfTwoCount(e)


def test_gamma_total_values():
    assert gamma_total(3).value == 8
    assert gamma_total(4).value == 64


@pytest.mark.parametrize(
    "m,n,expected",
    [(4, 2, [(3, 1), (2, 2)]), (5, 5, [(1, 1, 1, 1, 1)]), (6, 3, [(4, 1, 1), (3, 2, 1), (2, 2, 2)])],
)
def test_partitions_into(m, n, expected):
    assert [p.parts for p in partitions_into(m, n)] == expected


def test_partitions_into_range():
    with pytest.raises(ValueError):
        partitions_into(3, 4)
    with pytest.raises(ValueError):
        partitions_into(3, 0)


def test_partition_counts_match_recurrence():
    # p(m, n) = p(m-1, n-1) + p(m-n, n)
    def p(m, n):
        if m == n == 0:
            return 1
        if m <= 0 or n <= 0:
            return 0
        return p(m - 1, n - 1) + p(m - n, n)

    for m in range(1, 16):
        for n in range(1, m + 1):
            parts = partitions_into(m, n)
            assert len(parts) == p(m, n)
            assert len(set(parts)) == len(parts)
            assert [q.parts for q in parts] == sorted((q.parts for q in parts), reverse=True)


@pytest.mark.parametrize("parts,e", [((2, 2), 4), ((3, 1), 3), ((1,) * 7, comb(7, 2))])
def test_cross_pairs_exponent(parts, e):
    assert cross_pairs_exponent(P(parts)) == e


def test_cross_pairs_literal_equals_identity_up_to_30():
    for m in range(1, 31):
        for n in range(1, m + 1):
            for p in partitions_into(m, n):
                cross_pairs_exponent(p)  # raises on mismatch


@pytest.mark.parametrize("parts,count", [((2, 2), 16), ((3, 1), 8), ((1, 1, 1), 8)])
def test_gamma_partition(parts, count):
    assert gamma_partition(P(parts)).value == count


@pytest.mark.parametrize("m,parts,count", [(4, (2, 2), 16), (3, (2, 1), 4), (5, (5,), 1), (3, (3,), 1)])
def test_oracle_fixed_partition(m, parts, count):
    assert oracle_fixed_partition_count(m, P(parts)) == count


def test_oracle_fixed_partition_guard():
    with pytest.raises(ValueError):
        oracle_fixed_partition_count(7, P((4, 3)))


def test_oracle_fixed_partition_by_graph_objects():
    # independent of the bitmask shortcut: walk Graph objects and test classes directly
    p = P((2, 2))
    labels = p.labels()
    count = sum(
        all(labels[i - 1] != labels[j - 1] for i, j in g.edges) for g in all_graphs(4)
    )
    assert count == 16 == oracle_fixed_partition_count(4, p)


@pytest.mark.parametrize(
    "m,n,e,parts", [(4, 2, 4, (2, 2)), (3, 2, 2, (2, 1)), (5, 5, 10, (1,) * 5), (6, 2, 9, (3, 3))]
)
def test_gamma_max(m, n, e, parts):
    count, arg = gamma_max(m, n)
    assert count.exponent == e and arg.parts == parts


def test_gamma_max_matches_enumeration_up_to_20():
    for m in range(1, 21):
        for n in range(1, m + 1):
            exps = sorted((gamma_partition(p).exponent, p.parts) for p in partitions_into(m, n))
            top = exps[-1]
            assert [e for e, _ in exps].count(top[0]) == 1  # unique maximiser
            count, arg = gamma_max(m, n)
            assert (count.exponent, arg.parts) == top


@pytest.mark.parametrize(
    "m,n,y,equality", [(4, 2, 2, True), (6, 2, 4, False), (5, 5, 0, True), (1, 1, 0, True)]
)
def test_verify_theorem_bound(m, n, y, equality):
    check = verify_theorem_bound(m, n)
    assert check.y == y and check.holds and check.equality == equality


def test_theorem_equality_characterisation():
    for m in range(2, 21):
        for n in range(1, m + 1):
            check = verify_theorem_bound(m, n)
            assert check.holds
            assert check.equality == (m <= 2 * n)


def test_theorem_holds_for_every_partition_not_just_the_max():
    for m in range(2, 16):
        for n in range(1, m + 1):
            for p in partitions_into(m, n):
                assert gamma_total(m).exponent >= (m - n) + gamma_partition(p).exponent


class TestP1:
    def test_four_two(self):
        p1, bound = p1_bound(4, 2)
        assert p1 == DyadicProbability(2) and bound == DyadicProbability(2)

    def test_bound_substitution(self):
        assert p1_bound(8, 3)[1] == DyadicProbability(5)

    def test_full_palette(self):
        for m in range(1, 10):
            assert p1_bound(m, m)[0].value == 1

    def test_chain(self):
        for m in range(1, 65):
            for n in range(1, m + 1):
                p1, bound = p1_bound(m, n)
                assert p1 <= bound
                assert p1.neg_exponent >= bound.neg_exponent

    def test_str(self):
        assert str(p1_bound(4, 2)[0]) == "2^-2"


@pytest.mark.parametrize("m,ratio", [(3, Fraction(1)), (5, Fraction(2)), (64, Fraction(63, 2))])
def test_overhead_ratio(m, ratio):
    assert overhead_ratio(m) == ratio


class TestSpectrum:
    def test_three(self):
        assert oracle_spectrum(3).counts == (1, 6, 1)

    def test_two(self):
        assert oracle_spectrum(2).counts == (1, 1)

    def test_four_bipartite(self):
        assert oracle_spectrum(4).at_most(2) == 41

    def test_four_bipartite_by_triangle_inclusion_exclusion(self):
        # order 4: non-bipartite means containing a triangle (odd cycles of length <= 4)
        triangles = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
        # graphs containing a given set of triangles: all their union edges forced
        from itertools import combinations

        def edges(tris):
            return {frozenset(p) for t in tris for p in combinations(t, 2)}

        with_triangle = 0
        for k in range(1, 5):
            for chosen in combinations(triangles, k):
                with_triangle += (-1) ** (k + 1) * 2 ** (6 - len(edges(chosen)))
        assert 64 - with_triangle == 41

    @pytest.mark.parametrize("m", range(1, 8))
    def test_closure(self, m):
        assert oracle_spectrum(m).total == 2 ** comb(m, 2)

    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_matches_solver(self, m):
        counts = [0] * m
        for g in all_graphs(m):
            counts[chromatic_number(g).n - 1] += 1
        assert oracle_spectrum(m).counts == tuple(counts)

    def test_sharding_does_not_change_tally(self):
        assert oracle_spectrum(5, shards=7) == oracle_spectrum(5)

    def test_guard(self):
        with pytest.raises(ValueError):
            oracle_spectrum(8)


def test_set_partitions_are_bell_numbers():
    assert [sum(1 for _ in set_partitions(m)) for m in range(1, 8)] == [1, 2, 5, 15, 52, 203, 877]


@given(st.lists(st.integers(1, 8), min_size=1, max_size=8))
def test_partition_spec_of_sorts(parts):
    p = PartitionSpec.of(parts)
    assert p.m == sum(parts) and p.n == len(parts)
    assert list(p.parts) == sorted(parts, reverse=True)


def test_partition_spec_rejects_bad_parts():
    with pytest.raises(ValueError):
        PartitionSpec((1, 2))
    with pytest.raises(ValueError):
        PartitionSpec((2, 0))
