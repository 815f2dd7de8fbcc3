"""Exact counting of monotone subsequences of a fixed length.

Two independent engines: a layered dynamic program over a value-indexed
binary indexed tree (O(n * L * log n) big-integer additions), and a plain
subset-enumeration oracle used to cross-check it.  Decreasing counts reuse
the increasing engine on the position-reversed permutation, so there is a
single code path to trust.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .config import DEFAULT_BUDGETS, Budgets
from .errors import BudgetExceededError, ValidationError
from .perms import Permutation


class _Fenwick:
    """Binary indexed tree over values 1..n with big-integer sums."""

    __slots__ = ("n", "tree")

    def __init__(self, n: int):
        self.n = n
        self.tree = [0] * (n + 1)

    def add(self, i: int, delta: int) -> None:
        tree = self.tree
        while i <= self.n:
            tree[i] += delta
            i += i & -i

    def prefix(self, i: int) -> int:
        tree = self.tree
        total = 0
        while i > 0:
            total += tree[i]
            i -= i & -i
        return total


@dataclass(frozen=True)
class CountReport:
    """Exact per-type counts of monotone (k+1)-subsequences."""

    k: int
    increasing: int
    decreasing: int

    @property
    def total(self) -> int:
        return self.increasing + self.decreasing

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "increasing": self.increasing,
            "decreasing": self.decreasing,
            "total": self.total,
        }


@dataclass(frozen=True)
class LengthProfile:
    """Per-length exact counts, length L = 2 .. Lmax."""

    per_length: dict[int, tuple[int, int]]

    def to_json_dict(self) -> dict:
        return {
            str(L): {"increasing": inc, "decreasing": dec}
            for L, (inc, dec) in sorted(self.per_length.items())
        }


def count_increasing_exact(p: Permutation, L: int) -> int:
    """Number of index sets i_1 < ... < i_L with strictly increasing values.

    Layered recurrence f_L(i) = sum_{j < i, p(j) < p(i)} f_{L-1}(j) with
    f_1 = 1, one binary indexed tree per layer keyed by value.
    """
    if L < 1:
        raise ValidationError("subsequence length must be >= 1")
    n = p.n
    if L > n:
        return 0
    if L == 1:
        return n
    layers = [_Fenwick(n) for _ in range(L + 1)]
    for v in p.values:
        f = [0] * (L + 1)
        f[1] = 1
        for lev in range(2, L + 1):
            f[lev] = layers[lev - 1].prefix(v - 1)
        for lev in range(1, L + 1):
            if f[lev]:
                layers[lev].add(v, f[lev])
    return layers[L].prefix(n)


def count_monotone(p: Permutation, k: int) -> CountReport:
    """Exact counts of increasing and decreasing (k+1)-subsequences."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    return CountReport(
        k=k,
        increasing=count_increasing_exact(p, k + 1),
        decreasing=count_increasing_exact(p.reverse(), k + 1),
    )


def brute_force_count(p: Permutation, k: int, budgets: Budgets = DEFAULT_BUDGETS) -> CountReport:
    """Subset-enumeration oracle with the same contract as count_monotone."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    n, m = p.n, k + 1
    work = comb(n, m)
    if work > budgets.subset_budget:
        raise BudgetExceededError(
            f"C({n},{m}) = {work} subsets exceed the enumeration budget",
            needed=work,
            budget=budgets.subset_budget,
        )
    inc = dec = 0
    for sub in combinations(p.values, m):
        if all(a < b for a, b in zip(sub, sub[1:])):
            inc += 1
        elif all(a > b for a, b in zip(sub, sub[1:])):
            dec += 1
    return CountReport(k=k, increasing=inc, decreasing=dec)


def length_profile(p: Permutation, Lmax: int) -> LengthProfile:
    """Exact counts for every length 2..Lmax in one layered pass per type."""
    if Lmax < 2:
        raise ValidationError("Lmax must be >= 2")
    inc = _all_lengths(p, Lmax)
    dec = _all_lengths(p.reverse(), Lmax)
    return LengthProfile({L: (inc[L], dec[L]) for L in range(2, Lmax + 1)})


def _all_lengths(p: Permutation, Lmax: int) -> dict[int, int]:
    n = p.n
    top = min(Lmax, n)
    layers = [_Fenwick(n) for _ in range(top + 1)]
    for v in p.values:
        f = [0] * (top + 1)
        if top >= 1:
            f[1] = 1
        for lev in range(2, top + 1):
            f[lev] = layers[lev - 1].prefix(v - 1)
        for lev in range(1, top + 1):
            if f[lev]:
                layers[lev].add(v, f[lev])
    out = {L: 0 for L in range(2, Lmax + 1)}
    for L in range(2, top + 1):
        out[L] = layers[L].prefix(n)
    return out
