from fractions import Fraction

import pytest

from partlab import counting
from partlab.partitions import Partition, dominates


@pytest.fixture(scope="module")
def table():
    return counting.build_table(60)


class TestTable:
    def test_restricted_examples(self, table):
        assert table.count_restricted(5, 5) == 7
        assert table.count_restricted(4, 2) == 3
        assert table.count_restricted(0, 0) == 1
        assert table.count_restricted(3, 0) == 0

    def test_totals(self, table):
        assert table.count(0) == 1
        assert table.count(1) == 1
        assert table.count(4) == 5
        assert table.count(26) == 2436

    def test_range_errors(self, table):
        with pytest.raises(ValueError):
            table.count(61)
        with pytest.raises(ValueError):
            table.count_restricted(-1, 3)

    def test_pi_100(self):
        assert counting.build_table(100).count(100) == 190569292

    def test_matches_pentagonal_recurrence(self, table):
        oracle = counting.pentagonal_counts(60)
        for n in range(61):
            assert table.count(n) == oracle[n]

    def test_count_partitions_wrapper(self, table):
        assert counting.count_partitions(table, 10) == 42


class TestEnumeration:
    def test_order_at_4(self):
        got = [p.parts for p in counting.enumerate_partitions(4)]
        assert got == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]

    def test_zero_yields_empty(self):
        assert list(counting.enumerate_partitions(0)) == [Partition()]

    def test_negative_raises(self):
        with pytest.raises(ValueError):
            list(counting.enumerate_partitions(-1))

    def test_stream_length_is_pi(self, table):
        for n in range(31):
            assert sum(1 for _ in counting.enumerate_partitions(n)) == table.count(n)

    def test_reverse_lex_order(self):
        for n in (7, 11):
            seq = [p.parts for p in counting.enumerate_partitions(n)]
            assert all(a > b for a, b in zip(seq, seq[1:]))
            assert all(sum(p) == n for p in seq)


class TestRanking:
    def test_unrank_matches_enumeration(self, table):
        for n in (0, 1, 4, 9, 14):
            expected = list(counting.enumerate_partitions(n))
            got = [counting.unrank(table, n, i) for i in range(len(expected))]
            assert got == expected

    def test_rank_inverts_unrank(self, table):
        for n in range(21):
            for idx in range(table.count(n)):
                lam = counting.unrank(table, n, idx)
                assert counting.rank(table, lam) == idx

    def test_unrank_bounds(self, table):
        with pytest.raises(ValueError, match="out of range"):
            counting.unrank(table, 4, 5)
        with pytest.raises(ValueError, match="out of range"):
            counting.unrank(table, 4, -1)

    def test_rank_accepts_bare_tuple(self, table):
        assert counting.rank(table, (4,)) == 0


class TestExactP:
    def test_pinned_values(self):
        assert counting.exact_p(1) == 0
        assert counting.exact_p(2) == Fraction(1, 2)
        assert counting.exact_p(4) == Fraction(2, 5)

    def test_empty_weight(self):
        assert counting.exact_p(0) == 1

    def test_hand_derived_p6(self):
        # partitions of 6: graphical are (2,2,1,1), (2,1,1,1,1),
        # (1,1,1,1,1,1), (3,1,1,1), (2,2,2) out of 11
        assert counting.exact_p(6) == Fraction(5, 11)

    def test_counts_exposed(self):
        assert counting.graphical_count(4) == (2, 5)
        hits, total = counting.graphical_count(8)
        assert total == 22
        assert Fraction(hits, total) == counting.exact_p(8)

    def test_cap(self):
        with pytest.raises(ValueError, match="enumeration cap"):
            counting.exact_p(61)
        with pytest.raises(ValueError, match="cap"):
            counting.graphical_count(10, cap=9)


def _dominates_bruteforce(a, b):
    # plain double loop over padded prefixes, kept deliberately naive
    a = list(a.parts) if hasattr(a, "parts") else list(a)
    b = list(b.parts) if hasattr(b, "parts") else list(b)
    width = max(len(a), len(b))
    a += [0] * (width - len(a))
    b += [0] * (width - len(b))
    for i in range(width):
        if sum(a[: i + 1]) > sum(b[: i + 1]):
            return False
    return True


class TestExactR:
    def test_pinned_values(self):
        assert counting.exact_r(1) == 1
        assert counting.exact_r(2) == Fraction(3, 4)
        assert counting.exact_r(3) == Fraction(2, 3)

    def test_empty_weight(self):
        assert counting.exact_r(0) == 1

    def test_chain_at_4(self):
        # pairs at n=4: dominance restricted to the 5 partitions of 4,
        # which form a chain, so comparable ordered pairs are
        # 5 + 2*C(5,2) = 15 of 25
        assert counting.exact_r(4) == Fraction(15, 25)

    def test_two_sided_identity(self):
        # two-sided = 2*one_sided - 1/pi(n) as probabilities
        for n in (2, 3, 5, 8):
            one = counting.exact_r(n)
            two = counting.exact_r(n, two_sided=True)
            pi_n = counting.build_table(n).count(n)
            assert two == 2 * one - Fraction(1, pi_n)
        assert counting.exact_r(2, two_sided=True) == 1

    def test_matches_bruteforce(self):
        for n in range(9):
            plist = list(counting.enumerate_partitions(n))
            expect = sum(
                _dominates_bruteforce(a, b) for a in plist for b in plist
            )
            pairs, count = counting.comparable_count(n)
            assert (pairs, count) == (expect, len(plist))
            # and the module's own dominates agrees pairwise
            recheck = sum(dominates(a, b) for a in plist for b in plist)
            assert recheck == expect

    def test_cap(self):
        with pytest.raises(ValueError, match="pair-exhaustion cap"):
            counting.exact_r(31)
        assert counting.exact_r(31, cap=31) is not None
