"""Exhaustive and heuristic minimization of the monotone-subsequence count,
plus the exhaustive poset analogue.

The exhaustive engine runs a lexicographic DFS over one-line prefixes with
an incremental layered count and prunes any prefix whose in-prefix count
already exceeds the best known value.  The stacked-block formula seeds the
bound (the block permutation is always a candidate), so the bound is sound
from the first node.  Orbit symmetry under reverse/complement/inverse cuts
the tree through necessary conditions on the lexicographically least orbit
member; witnesses are canonicalized at the leaves, so reported minimizers
are orbit representatives.

Workers split the space by the first two positions and never share state,
which keeps results and visit counts bit-reproducible for a fixed
(n, k, budget, seed, workers) tuple.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .config import DEFAULT_BUDGETS, Budgets
from .counting import brute_force_count, count_monotone
from .errors import BudgetExceededError, ValidationError
from .perms import Permutation, build_tau, canonical_form, m_tau_formula


@dataclass(frozen=True)
class SearchResult:
    n: int
    k: int
    minimum: int
    witnesses: list[Permutation]
    type_breakdown: list[tuple[int, int]]
    states_visited: int
    elapsed_seconds: float = field(compare=False)
    is_upper_bound: bool = False
    witnesses_truncated: bool = False

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "minimum": str(self.minimum),
            "witnesses": [list(w.values) for w in self.witnesses],
            "type_breakdown": [
                {"increasing": str(i), "decreasing": str(d)} for i, d in self.type_breakdown
            ],
            "states_visited": self.states_visited,
            "is_upper_bound": self.is_upper_bound,
            "witnesses_truncated": self.witnesses_truncated,
        }


def classify_extremal(p: Permutation, k: int) -> str:
    """Label which monotone (k+1)-subsequence types occur."""
    report = count_monotone(p, k)
    if report.increasing and report.decreasing:
        return "mixed"
    if report.increasing:
        return "increasing-only"
    if report.decreasing:
        return "decreasing-only"
    return "none"


def _search_task(args) -> tuple[int, list[tuple[int, ...]], int, bool]:
    """DFS below one fixed prefix; returns (best, canonical witnesses, nodes, truncated)."""
    n, k, prefix, bound, node_budget, witness_cap = args
    L = k + 1
    half = (n + 1) // 2

    vals: list[int] = []
    used = [False] * (n + 1)
    # inc[t][j] / dec[t][j]: monotone t-subsequences ending at prefix position j.
    inc = [[] for _ in range(L + 1)]
    dec = [[] for _ in range(L + 1)]

    best = bound
    witnesses: set[tuple[int, ...]] = set()
    nodes = 0
    truncated = False

    def push(v: int, count: int) -> int:
        new_inc = [0] * (L + 1)
        new_dec = [0] * (L + 1)
        new_inc[1] = new_dec[1] = 1
        for t in range(2, L + 1):
            row_i = inc[t - 1]
            row_d = dec[t - 1]
            si = sd = 0
            for j, w in enumerate(vals):
                if w < v:
                    si += row_i[j]
                else:
                    sd += row_d[j]
            new_inc[t] = si
            new_dec[t] = sd
        for t in range(1, L + 1):
            inc[t].append(new_inc[t])
            dec[t].append(new_dec[t])
        vals.append(v)
        used[v] = True
        return count + new_inc[L] + new_dec[L]

    def pop(v: int) -> None:
        for t in range(1, L + 1):
            inc[t].pop()
            dec[t].pop()
        vals.pop()
        used[v] = False

    def record_leaf(count: int) -> None:
        nonlocal best, truncated
        if count < best:
            best = count
            witnesses.clear()
        if count == best:
            word = canonical_form(tuple(vals))
            if word in witnesses or len(witnesses) < witness_cap:
                witnesses.add(word)
            else:
                truncated = True

    def dfs(count: int) -> None:
        nonlocal nodes
        pos = len(vals) + 1  # 1-based position being filled
        p1 = vals[0]
        window_hi = n + 1 - p1
        # The least orbit member has values 1 and n placed inside
        # [p1, n+1-p1]; past that window the branch cannot be canonical.
        if pos > window_hi and (not used[1] or not used[n]):
            return
        for v in range(1, n + 1):
            if used[v]:
                continue
            if v in (1, n) and not (p1 <= pos <= window_hi):
                continue
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceededError(
                    "exhaustive search exceeded its node budget",
                    needed=nodes,
                    budget=node_budget,
                )
            new_count = push(v, count)
            if new_count <= best:
                if len(vals) == n:
                    record_leaf(new_count)
                else:
                    dfs(new_count)
            pop(v)

    count = 0
    ok = True
    for pos, v in enumerate(prefix, start=1):
        if pos == 1 and v > half:
            ok = False
            break
        if pos == 2 and 2 * prefix[0] == n + 1 and 2 * v > n:
            ok = False
            break
        if v in (1, n) and not (prefix[0] <= pos <= n + 1 - prefix[0]):
            ok = False
            break
        count = push(v, count)
    if ok and count <= best:
        if len(vals) == n:
            record_leaf(count)
        else:
            dfs(count)
    return best, sorted(witnesses), nodes, truncated


def _prefixes(n: int) -> list[tuple[int, ...]]:
    half = (n + 1) // 2
    if n == 1:
        return [(1,)]
    out = []
    for v1 in range(1, half + 1):
        for v2 in range(1, n + 1):
            if v2 == v1:
                continue
            if 2 * v1 == n + 1 and 2 * v2 > n:
                continue
            out.append((v1, v2))
    return out


def exhaustive_min(
    n: int, k: int, budgets: Budgets = DEFAULT_BUDGETS, workers: int = 1
) -> SearchResult:
    """Exact minimum of the monotone (k+1)-subsequence count over all of S_n.

    Visits one representative per symmetry orbit (up to the prefix rules),
    re-verifies every reported witness with the subset-enumeration oracle,
    and raises if the configured budgets are exceeded.
    """
    if n < 1 or k < 1:
        raise ValidationError("n and k must be positive")
    if n > budgets.exhaustive_max_n:
        raise BudgetExceededError(
            f"n = {n} exceeds the exhaustive search cap {budgets.exhaustive_max_n}",
            needed=n,
            budget=budgets.exhaustive_max_n,
        )
    if workers < 1:
        raise ValidationError("workers must be >= 1")

    start = time.perf_counter()
    bound = m_tau_formula(k, n)
    tasks = [
        (n, k, prefix, bound, budgets.search_state_budget, budgets.witness_cap)
        for prefix in _prefixes(n)
    ]
    if workers == 1:
        outcomes = [_search_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_search_task, tasks, chunksize=1))

    minimum = min(o[0] for o in outcomes)
    states = sum(o[2] for o in outcomes)
    if states > budgets.search_state_budget:
        raise BudgetExceededError(
            "exhaustive search exceeded its node budget",
            needed=states,
            budget=budgets.search_state_budget,
        )
    truncated = any(o[3] for o in outcomes)
    merged: set[tuple[int, ...]] = set()
    for o in outcomes:
        if o[0] == minimum:
            merged.update(o[1])
    witness_words = sorted(merged)[: budgets.witness_cap]
    witnesses = [Permutation(w) for w in witness_words]

    breakdown = []
    for w in witnesses:
        oracle = brute_force_count(w, k, budgets)
        if oracle.total != minimum:
            raise AssertionError(f"witness re-check failed for {w}: {oracle.total} != {minimum}")
        breakdown.append((oracle.increasing, oracle.decreasing))

    return SearchResult(
        n=n,
        k=k,
        minimum=minimum,
        witnesses=witnesses,
        type_breakdown=breakdown,
        states_visited=states,
        elapsed_seconds=time.perf_counter() - start,
        witnesses_truncated=truncated,
    )


@dataclass(frozen=True)
class TheoremReport:
    n: int
    k: int
    exhaustive_minimum: int
    formula_value: int
    match: bool
    subcritical: bool
    special_n: bool  # n == k^2 + k + 1
    single_type_count: int
    mixed_count: int
    all_single_type: bool
    mixed_split_ok: Optional[bool]  # every mixed minimizer has >= 2k-1 of one type
    witnesses_truncated: bool

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "exhaustive_minimum": str(self.exhaustive_minimum),
            "formula_value": str(self.formula_value),
            "match": self.match,
            "subcritical": self.subcritical,
            "special_n": self.special_n,
            "single_type_count": self.single_type_count,
            "mixed_count": self.mixed_count,
            "all_single_type": self.all_single_type,
            "mixed_split_ok": self.mixed_split_ok,
            "witnesses_truncated": self.witnesses_truncated,
        }


def verify_theorem(
    n: int, k: int, budgets: Budgets = DEFAULT_BUDGETS, workers: int = 1
) -> TheoremReport:
    """Exhaustive check of the minimum-value and classification claims.

    Away from n = k^2+k+1 every minimizer must use one monotone type only;
    at n = k^2+k+1 mixed minimizers exist and each must still have at least
    2k-1 of its 2k+1 monotone subsequences of a single type.
    """
    result = exhaustive_min(n, k, budgets, workers)
    formula = m_tau_formula(k, n)
    special = n == k * k + k + 1
    mixed = 0
    split_ok: Optional[bool] = True if special else None
    for inc, dec in result.type_breakdown:
        if inc and dec:
            mixed += 1
            if special and max(inc, dec) < 2 * k - 1:
                split_ok = False
    return TheoremReport(
        n=n,
        k=k,
        exhaustive_minimum=result.minimum,
        formula_value=formula,
        match=result.minimum == formula,
        subcritical=n <= k * k,
        special_n=special,
        single_type_count=len(result.witnesses) - mixed,
        mixed_count=mixed,
        all_single_type=mixed == 0,
        mixed_split_ok=split_ok,
        witnesses_truncated=result.witnesses_truncated,
    )


def heuristic_min(
    n: int,
    k: int,
    trials: int = 100,
    seed: int = 0,
    max_steps: int = 200,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> SearchResult:
    """Upper bound from seeded restarts plus adjacent-swap hill climbing.

    The stacked-block permutation seeds the pool, so the result never
    exceeds the closed-form value; identical seeds reproduce identical
    trajectories.
    """
    if n < 1 or k < 1:
        raise ValidationError("n and k must be positive")
    rng = random.Random(seed)
    start = time.perf_counter()
    evaluations = 0

    def value(word: tuple[int, ...]) -> int:
        nonlocal evaluations
        evaluations += 1
        return count_monotone(Permutation(word), k).total

    best_word = build_tau(k, n).values
    best_value = value(best_word)
    for _ in range(max(0, trials)):
        word = list(range(1, n + 1))
        rng.shuffle(word)
        current = tuple(word)
        current_value = value(current)
        for _ in range(max_steps):
            improved = False
            for i in range(n - 1):
                cand = list(current)
                cand[i], cand[i + 1] = cand[i + 1], cand[i]
                cand_t = tuple(cand)
                cand_value = value(cand_t)
                if cand_value < current_value:
                    current, current_value = cand_t, cand_value
                    improved = True
                    break
            if not improved:
                break
        if current_value < best_value:
            best_word, best_value = current, current_value
    witness = Permutation(canonical_form(best_word))
    report = count_monotone(witness, k)
    return SearchResult(
        n=n,
        k=k,
        minimum=best_value,
        witnesses=[witness],
        type_breakdown=[(report.increasing, report.decreasing)],
        states_visited=evaluations,
        elapsed_seconds=time.perf_counter() - start,
        is_upper_bound=True,
    )


@dataclass(frozen=True)
class PosetSearchResult:
    n: int
    k: int
    minimum: int
    witness_relation: list[tuple[int, int]]  # covering pairs, 1-based
    posets_visited: int
    permutation_minimum: Optional[int]
    elapsed_seconds: float = field(compare=False)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "minimum": str(self.minimum),
            "witness_relation": [list(p) for p in self.witness_relation],
            "posets_visited": self.posets_visited,
            "permutation_minimum": None
            if self.permutation_minimum is None
            else str(self.permutation_minimum),
        }


def min_hk_over_posets(
    n: int, k: int, budgets: Budgets = DEFAULT_BUDGETS, compare_with_permutations: bool = True
) -> PosetSearchResult:
    """Exact minimum of the homogenous (k+1)-set count over all n-element posets.

    Enumerates every strict order whose identity labeling is a linear
    extension (each element picks a down-closed predecessor set), which
    reaches every isomorphism class.  Counts grow monotonically as elements
    are added, so prefixes that already exceed the incumbent are cut.
    """
    if n < 1 or k < 1:
        raise ValidationError("n and k must be positive")
    if n > budgets.poset_enum_max_n:
        raise BudgetExceededError(
            f"n = {n} exceeds the poset enumeration cap {budgets.poset_enum_max_n}",
            needed=n,
            budget=budgets.poset_enum_max_n,
        )
    start = time.perf_counter()
    m = k + 1
    below = [0] * n
    # chain_counts[x][t]: chains of size t with maximum x, maintained incrementally.
    chain_counts = [[0] * (m + 1) for _ in range(n)]
    best: Optional[int] = None
    best_below: Optional[list[int]] = None
    visited = 0

    incomp = [0] * n  # incomparability masks among placed elements

    def antichains_with_top(j: int, need: int) -> int:
        # antichains containing j plus `need` pairwise-incomparable smaller ids
        def rec(candidates: int, need: int) -> int:
            if need == 0:
                return 1
            if candidates.bit_count() < need:
                return 0
            total = 0
            cand = candidates
            while cand:
                low = cand & -cand
                i = low.bit_length() - 1
                cand ^= low
                total += rec(cand & incomp[i], need - 1)
            return total

        return rec(incomp[j], need)

    def place(j: int, mask: int) -> int:
        below[j] = mask
        incomp[j] = ((1 << j) - 1) & ~mask
        for i in range(j):
            if not (mask >> i) & 1:
                incomp[i] |= 1 << j
        row = chain_counts[j]
        row[1] = 1
        for t in range(2, m + 1):
            row[t] = 0
        rest = mask
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            rest ^= low
            other = chain_counts[i]
            for t in range(2, m + 1):
                row[t] += other[t - 1]
        added = row[m] + antichains_with_top(j, m - 1)
        return added

    def unplace(j: int) -> None:
        for i in range(j):
            incomp[i] &= ~(1 << j)
        below[j] = 0

    def closed_downsets(j: int) -> list[int]:
        out = []
        for mask in range(1 << j):
            rest = mask
            needed = 0
            while rest:
                low = rest & -rest
                needed |= below[low.bit_length() - 1]
                rest ^= low
            if needed & ~mask == 0:
                out.append(mask)
        return out

    def rec(j: int, count: int) -> None:
        nonlocal best, best_below, visited
        if j == n:
            if best is None or count < best:
                best = count
                best_below = list(below)
            return
        for mask in closed_downsets(j):
            visited += 1
            added = place(j, mask)
            if best is None or count + added < best:
                rec(j + 1, count + added)
            unplace(j)

    rec(0, 0)
    assert best is not None and best_below is not None

    # Recover the covering pairs of the winning relation.
    from .posets import poset_from_relation

    pairs = [(i, j) for j in range(n) for i in range(n) if (best_below[j] >> i) & 1]
    witness_poset = poset_from_relation(n, pairs)
    covers = [(i + 1, j + 1) for i, j in witness_poset.cover_pairs()]

    perm_minimum: Optional[int] = None
    if compare_with_permutations and n <= budgets.exhaustive_max_n:
        perm_minimum = exhaustive_min(n, k, budgets).minimum
        assert best <= perm_minimum, "poset minimum cannot exceed the permutation minimum"

    return PosetSearchResult(
        n=n,
        k=k,
        minimum=best,
        witness_relation=covers,
        posets_visited=visited,
        permutation_minimum=perm_minimum,
        elapsed_seconds=time.perf_counter() - start,
    )
