from itertools import permutations as iter_permutations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monoseq.config import DEFAULT_BUDGETS
from monoseq.counting import (
    brute_force_count,
    count_increasing_exact,
    count_monotone,
    length_profile,
)
from monoseq.errors import BudgetExceededError, ValidationError
from monoseq.perms import Permutation, build_sigma_extremal, build_tau, identity

from conftest import permutations_st


class TestCountIncreasingExact:
    def test_identity_counts_subsets(self):
        assert count_increasing_exact(identity(6), 3) == 20

    def test_strictly_decreasing(self):
        assert count_increasing_exact(Permutation((3, 2, 1)), 2) == 0

    def test_tau_value(self):
        assert count_increasing_exact(build_tau(3, 13), 4) == 7

    def test_length_beyond_n(self):
        assert count_increasing_exact(identity(3), 4) == 0

    def test_length_one(self):
        assert count_increasing_exact(Permutation((2, 1, 3)), 1) == 3

    def test_rejects_bad_length(self):
        with pytest.raises(ValidationError):
            count_increasing_exact(identity(3), 0)


class TestCountMonotone:
    def test_sigma_signature(self):
        report = count_monotone(build_sigma_extremal(3, 1), 3)
        assert (report.increasing, report.decreasing) == (6, 1)

    def test_identity(self):
        report = count_monotone(identity(5), 2)
        assert (report.increasing, report.decreasing, report.total) == (10, 0, 10)

    def test_two_block_example(self):
        # (3,4,5) is the only monotone triple here.
        report = count_monotone(Permutation((3, 4, 5, 1, 2)), 2)
        assert (report.increasing, report.decreasing) == (1, 0)


class TestBruteForce:
    @pytest.mark.parametrize(
        "p,k,expected",
        [
            (build_sigma_extremal(3, 1), 3, (6, 1)),
            (identity(5), 2, (10, 0)),
            (Permutation((3, 4, 5, 1, 2)), 2, (1, 0)),
        ],
    )
    def test_matches_count_monotone_examples(self, p, k, expected):
        report = brute_force_count(p, k)
        assert (report.increasing, report.decreasing) == expected

    def test_every_pair_is_monotone(self):
        report = brute_force_count(Permutation((2, 1, 4, 3)), 1)
        assert (report.increasing, report.decreasing) == (4, 2)
        assert report.total == comb(4, 2)

    def test_square_length_can_reach_zero(self):
        for k in (2, 3):
            assert brute_force_count(build_tau(k, k * k), k).total == 0

    def test_budget_error_reports_size(self):
        tight = DEFAULT_BUDGETS.with_overrides(subset_budget=10)
        with pytest.raises(BudgetExceededError) as info:
            brute_force_count(identity(10), 2, tight)
        assert info.value.needed == comb(10, 3)


class TestLengthProfile:
    def test_identity_profile(self):
        profile = length_profile(identity(4), 4).per_length
        assert profile == {2: (6, 0), 3: (4, 0), 4: (1, 0)}

    def test_small_mixed_profile(self):
        # No triple of (2,1,4,3) is monotone; only the pair level is populated.
        profile = length_profile(Permutation((2, 1, 4, 3)), 3).per_length
        assert profile == {2: (4, 2), 3: (0, 0)}

    def test_rejects_small_lmax(self):
        with pytest.raises(ValidationError):
            length_profile(identity(3), 1)

    @given(permutations_st(min_n=2, max_n=20))
    def test_pairs_partition_into_inversions(self, p):
        inc, dec = length_profile(p, 2).per_length[2]
        inversions = sum(
            1
            for i in range(p.n)
            for j in range(i + 1, p.n)
            if p.values[i] > p.values[j]
        )
        assert dec == inversions
        assert inc + dec == comb(p.n, 2)

    @given(permutations_st(min_n=2, max_n=12), st.integers(min_value=1, max_value=4))
    @settings(max_examples=30)
    def test_profile_agrees_with_single_length_counts(self, p, k):
        profile = length_profile(p, k + 1).per_length
        report = count_monotone(p, k)
        assert profile[k + 1] == (report.increasing, report.decreasing)


class TestOracleEquivalence:
    def test_exhaustive_small(self):
        for n in range(1, 7):
            for vals in iter_permutations(range(1, n + 1)):
                p = Permutation(vals)
                for k in (1, 2, 3):
                    fast = count_monotone(p, k)
                    slow = brute_force_count(p, k)
                    assert (fast.increasing, fast.decreasing) == (
                        slow.increasing,
                        slow.decreasing,
                    ), (vals, k)

    @given(permutations_st(min_n=2, max_n=40), st.integers(min_value=1, max_value=5))
    @settings(max_examples=150, deadline=None)
    def test_random_instances(self, p, k):
        if comb(p.n, k + 1) > 2000:
            k = 1
        fast = count_monotone(p, k)
        slow = brute_force_count(p, k)
        assert (fast.increasing, fast.decreasing) == (slow.increasing, slow.decreasing)
        assert fast.total >= max(0, p.n - k * k)


class TestInvariants:
    @given(permutations_st(min_n=2, max_n=15), st.integers(min_value=1, max_value=4))
    @settings(max_examples=60)
    def test_symmetry_swaps(self, p, k):
        base = count_monotone(p, k)
        rev = count_monotone(p.reverse(), k)
        comp = count_monotone(p.complement(), k)
        inv = count_monotone(p.inverse(), k)
        assert (rev.increasing, rev.decreasing) == (base.decreasing, base.increasing)
        assert (comp.increasing, comp.decreasing) == (base.decreasing, base.increasing)
        assert (inv.increasing, inv.decreasing) == (base.increasing, base.decreasing)

    @given(st.integers(min_value=1, max_value=3), st.data())
    @settings(max_examples=40)
    def test_erdos_szekeres_supersaturation(self, k, data):
        n = k * k + 1
        vals = data.draw(st.permutations(list(range(1, n + 1))))
        report = count_monotone(Permutation(tuple(vals)), k)
        assert report.total >= 1
        assert report.total >= n - k * k

    @given(permutations_st(min_n=2, max_n=15))
    @settings(max_examples=40)
    def test_zero_count_is_monotone_in_length(self, p):
        zero_seen = False
        for L in range(2, p.n + 2):
            c = count_increasing_exact(p, L)
            if zero_seen:
                assert c == 0
            if c == 0:
                zero_seen = True
