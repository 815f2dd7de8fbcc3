import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monoseq.config import DEFAULT_BUDGETS
from monoseq.counting import count_monotone
from monoseq.errors import BudgetExceededError, ValidationError
from monoseq.perms import Permutation, build_sigma_extremal, build_tau, identity
from monoseq.posets import (
    antichain_poset,
    chain_poset,
    count_antichains_of_size,
    count_chains_of_size,
    count_chains_through,
    dual,
    h_k,
    height,
    poset_from_json,
    poset_from_perm,
    poset_from_relation,
    reverse_order,
    surplus,
    width,
)
from monoseq.decomposition import decompose

from conftest import permutations_st


class TestConstruction:
    def test_identity_gives_total_order(self):
        P = poset_from_perm(identity(4))
        assert all(P.less(i, j) for i in range(4) for j in range(i + 1, 4))

    def test_reversal_gives_antichain(self):
        P = poset_from_perm(Permutation((3, 2, 1)))
        assert not any(P.comparable(i, j) for i in range(3) for j in range(i + 1, 3))

    def test_sigma_poset_matches_hasse_figure(self):
        P = poset_from_perm(build_sigma_extremal(3, 1))
        vals = P.witness.values
        level_values = [sorted(vals[x] for x in lvl) for lvl in decompose(P).levels]
        assert level_values == [[1, 2, 6, 10], [3, 7, 11], [4, 8, 12], [5, 9, 13]]

    def test_closure_computed_from_cover_pairs(self):
        P = poset_from_relation(3, [(0, 1), (1, 2)])
        assert P.less(0, 2)

    def test_rejects_cycles(self):
        with pytest.raises(ValidationError):
            poset_from_relation(3, [(0, 1), (1, 2), (2, 0)])
        with pytest.raises(ValidationError):
            poset_from_relation(2, [(0, 1), (1, 0)])

    def test_rejects_bad_witness(self):
        with pytest.raises(ValidationError):
            poset_from_relation(3, [(0, 1)], witness=identity(3))

    def test_json_round_trip(self):
        P = poset_from_perm(build_tau(2, 5))
        Q = poset_from_json(P.to_json_dict())
        assert Q.above == P.above and Q.witness == P.witness

    @given(permutations_st(max_n=12))
    @settings(max_examples=50)
    def test_relation_rederivable_from_witness(self, p):
        P = poset_from_perm(p)
        Q = poset_from_relation(P.n, P.relation_pairs(), witness=p)
        assert Q.above == P.above

    @given(permutations_st(max_n=12))
    @settings(max_examples=50)
    def test_closure_idempotent(self, p):
        P = poset_from_perm(p)
        again = poset_from_relation(P.n, P.cover_pairs())
        assert again.above == P.above


class TestDual:
    def test_chain_and_antichain_swap(self):
        assert height(dual(chain_poset(5))) == 1
        assert width(dual(chain_poset(5))) == 5

    def test_tau_dual_dimensions(self):
        D = dual(poset_from_perm(build_tau(3, 13)))
        assert height(D) == 3 and width(D) == 5

    def test_rejects_witness_free(self):
        P = poset_from_relation(3, [(0, 1)])
        with pytest.raises(ValidationError):
            dual(P)

    @given(permutations_st(max_n=12))
    @settings(max_examples=50)
    def test_involution_and_complementary_comparability(self, p):
        P = poset_from_perm(p)
        D = dual(P)
        assert dual(D).above == P.above
        for i in range(P.n):
            for j in range(i + 1, P.n):
                assert P.comparable(i, j) != D.comparable(i, j)


class TestReverseOrder:
    def test_chain_reverses_to_relabeled_chain(self):
        P = chain_poset(4)
        R = reverse_order(P)
        assert height(R) == 4
        assert all(R.less(j, i) == P.less(i, j) for i in range(4) for j in range(4))

    def test_antichain_fixed(self):
        P = antichain_poset(4)
        assert reverse_order(P).above == P.above

    @given(permutations_st(max_n=12))
    @settings(max_examples=40)
    def test_involution(self, p):
        P = poset_from_perm(p)
        assert reverse_order(reverse_order(P)).above == P.above

    @given(permutations_st(max_n=12))
    @settings(max_examples=40)
    def test_top_level_of_reverse_is_first_live_level(self, p):
        P = poset_from_perm(p)
        dec = decompose(P)
        rev_dec = decompose(reverse_order(P))
        assert sorted(rev_dec.levels[-1]) == sorted(dec.a_prime[0])


class TestHeightWidth:
    def test_tau_poset(self):
        P = poset_from_perm(build_tau(3, 13))
        assert (height(P), width(P)) == (5, 3)

    def test_chain(self):
        assert (height(chain_poset(6)), width(chain_poset(6))) == (6, 1)

    def test_sigma_poset(self):
        P = poset_from_perm(build_sigma_extremal(3, 1))
        assert (height(P), width(P)) == (4, 4)

    @given(permutations_st(max_n=14))
    @settings(max_examples=60)
    def test_matching_width_equals_dual_height(self, p):
        # The equality is asserted inside width(); this exercises it broadly.
        P = poset_from_perm(p)
        assert width(P) == height(dual(P))

    @given(permutations_st(max_n=14))
    @settings(max_examples=40)
    def test_mirsky_bound(self, p):
        P = poset_from_perm(p)
        assert height(P) * width(P) >= P.n


class TestChainCounting:
    def test_tau_chain_count(self):
        assert count_chains_of_size(poset_from_perm(build_tau(3, 13)), 4) == 7

    def test_antichain_has_no_pairs(self):
        assert count_chains_of_size(antichain_poset(5), 2) == 0

    def test_total_order_counts_subsets(self):
        assert count_chains_of_size(chain_poset(6), 3) == 20

    @given(permutations_st(max_n=14), st.integers(min_value=2, max_value=5))
    @settings(max_examples=60)
    def test_matches_increasing_subsequences(self, p, m):
        # Chains of the permutation poset are exactly increasing subsequences.
        P = poset_from_perm(p)
        assert count_chains_of_size(P, m) == count_monotone(p, m - 1).increasing

    @given(permutations_st(max_n=10), st.integers(min_value=1, max_value=4))
    @settings(max_examples=40)
    def test_anchored_counts_sum_correctly(self, p, m):
        # Each m-chain contains exactly m elements, so anchored counts sum to m * total.
        P = poset_from_perm(p)
        total = count_chains_of_size(P, m)
        anchored = sum(count_chains_through(P, m, x) for x in range(P.n))
        assert anchored == m * total


class TestAntichainCounting:
    def test_sigma_variants(self):
        P1 = poset_from_perm(build_sigma_extremal(3, 1))
        P2 = poset_from_perm(build_sigma_extremal(3, 2))
        assert count_antichains_of_size(P1, 4) == 1
        assert count_antichains_of_size(P2, 4) == 2

    def test_chain_has_no_antichain_pairs(self):
        assert count_antichains_of_size(chain_poset(5), 2) == 0

    def test_witness_free_enumeration_agrees(self):
        P = poset_from_perm(build_tau(2, 6))
        stripped = poset_from_relation(P.n, P.relation_pairs())
        for m in range(1, 5):
            assert count_antichains_of_size(stripped, m) == count_antichains_of_size(P, m)

    def test_witness_free_budget_error(self):
        stripped = poset_from_relation(12, [])
        tight = DEFAULT_BUDGETS.with_overrides(antichain_node_budget=5)
        with pytest.raises(BudgetExceededError):
            count_antichains_of_size(stripped, 6, tight)


class TestHomogenousCount:
    def test_sigma_value(self):
        assert h_k(poset_from_perm(build_sigma_extremal(3, 1)), 3) == 7

    def test_antichain_of_k(self):
        assert h_k(antichain_poset(3), 3) == 0

    @given(permutations_st(max_n=16), st.integers(min_value=1, max_value=4))
    @settings(max_examples=80)
    def test_correspondence_with_monotone_counts(self, p, k):
        P = poset_from_perm(p)
        report = count_monotone(p, k)
        assert count_chains_of_size(P, k + 1) == report.increasing
        assert count_antichains_of_size(P, k + 1) == report.decreasing
        assert h_k(P, k) == report.total


class TestSurplus:
    def test_tau_value(self):
        assert surplus(poset_from_perm(build_tau(3, 13)), 3) == -2

    def test_antichain(self):
        assert surplus(antichain_poset(6), 3) == 3

    def test_chain(self):
        assert surplus(chain_poset(5), 2) == 5 - 10

    @given(permutations_st(max_n=14), st.integers(min_value=1, max_value=4))
    @settings(max_examples=40)
    def test_equals_level_sum(self, p, k):
        P = poset_from_perm(p)
        dec = decompose(P)
        assert surplus(P, k) == sum(len(lvl) - k for lvl in dec.levels)
