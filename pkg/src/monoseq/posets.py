"""Finite strict partial orders with optional order-dimension-2 witnesses.

Elements are 0..n-1 internally (1-based at the JSON boundary).  The strict
order is stored as dense bitmask rows in both directions, with transitive
closure enforced at construction, so comparability queries are O(1) and the
decomposition loops stay cheap at desk scale.

A witness is a permutation realizing the poset: element i is below j
exactly when i < j as positions and witness(i) < witness(j) as values.
Chains then correspond to increasing subsequences and antichains to
decreasing ones, length-preservingly, and the dual order (swap the two
roles) exists exactly in this dimension-2 case.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .config import DEFAULT_BUDGETS, Budgets
from .errors import BudgetExceededError, ValidationError
from .perms import Permutation


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Poset:
    n: int
    above: tuple[int, ...]  # above[i] = bitmask of j with i < j
    below: tuple[int, ...]  # below[i] = bitmask of j with j < i
    witness: Optional[Permutation] = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    def less(self, i: int, j: int) -> bool:
        return bool(self.above[i] >> j & 1)

    def comparable(self, i: int, j: int) -> bool:
        return i != j and (self.less(i, j) or self.less(j, i))

    def relation_pairs(self) -> list[tuple[int, int]]:
        """All strict-order pairs (i, j), 0-based."""
        return [(i, j) for i in range(self.n) for j in iter_bits(self.above[i])]

    def cover_pairs(self) -> list[tuple[int, int]]:
        """Transitive reduction: pairs (i, j) with nothing strictly between."""
        out = []
        for i in range(self.n):
            for j in iter_bits(self.above[i]):
                if not (self.above[i] & self.below[j]):
                    out.append((i, j))
        return out

    def induced(self, keep: Sequence[int]) -> "Poset":
        """Subposet on the given elements, relabeled in ascending id order."""
        keep = sorted(keep)
        pos = {e: idx for idx, e in enumerate(keep)}
        above = []
        below = []
        for e in keep:
            above.append(sum(1 << pos[j] for j in iter_bits(self.above[e]) if j in pos))
            below.append(sum(1 << pos[j] for j in iter_bits(self.below[e]) if j in pos))
        witness = None
        if self.witness is not None and keep:
            vals = [self.witness.values[e] for e in keep]
            order = {v: rank + 1 for rank, v in enumerate(sorted(vals))}
            witness = Permutation(tuple(order[v] for v in vals))
        return Poset(len(keep), tuple(above), tuple(below), witness)

    def delete(self, drop: Iterable[int]) -> "Poset":
        gone = set(drop)
        return self.induced([e for e in range((self.n)) if e not in gone])

    def to_json_dict(self) -> dict:
        out = {"n": self.n, "relation": [[i + 1, j + 1] for i, j in self.cover_pairs()]}
        if self.witness is not None:
            out["witness"] = list(self.witness.values)
        return out


def poset_from_perm(p: Permutation) -> Poset:
    """The order with i below j iff i < j as positions and p(i) < p(j)."""
    n = p.n
    vals = p.values
    above = [0] * n
    below = [0] * n
    for i in range(n):
        vi = vals[i]
        for j in range(i + 1, n):
            if vals[j] > vi:
                above[i] |= 1 << j
                below[j] |= 1 << i
    return Poset(n, tuple(above), tuple(below), p)


def poset_from_relation(
    n: int, pairs: Iterable[tuple[int, int]], witness: Optional[Permutation] = None
) -> Poset:
    """Build from 0-based strict pairs; covering pairs suffice, closure is computed."""
    if n < 0:
        raise ValidationError("poset size must be nonnegative")
    adj = [0] * n
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise ValidationError(f"bad relation pair ({i}, {j})")
        adj[i] |= 1 << j

    # Reverse-topological sweep; cycles mean the input is not a strict order.
    indeg = [0] * n
    for i in range(n):
        for j in iter_bits(adj[i]):
            indeg[j] += 1
    stack = [i for i in range(n) if indeg[i] == 0]
    order = []
    while stack:
        i = stack.pop()
        order.append(i)
        for j in iter_bits(adj[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                stack.append(j)
    if len(order) != n:
        raise ValidationError("relation has a cycle; not a strict partial order")
    above = [0] * n
    for i in reversed(order):
        acc = adj[i]
        for j in iter_bits(adj[i]):
            acc |= above[j]
        above[i] = acc
        if acc >> i & 1:
            raise ValidationError("relation has a cycle; not a strict partial order")
    below = [0] * n
    for i in range(n):
        for j in iter_bits(above[i]):
            below[j] |= 1 << i
    P = Poset(n, tuple(above), tuple(below), witness)
    if witness is not None:
        if witness.n != n:
            raise ValidationError("witness length does not match poset size")
        expected = poset_from_perm(witness)
        if expected.above != P.above:
            raise ValidationError("witness does not realize the stated relation")
    return P


def poset_from_json(data) -> Poset:
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or "n" not in data:
        raise ValidationError('poset JSON must be {"n": int, "relation": [[i,j],...], ...}')
    n = data["n"]
    pairs = [(i - 1, j - 1) for i, j in data.get("relation", [])]
    witness = Permutation(tuple(data["witness"])) if data.get("witness") else None
    return poset_from_relation(n, pairs, witness)


def chain_poset(n: int) -> Poset:
    return poset_from_perm(Permutation(tuple(range(1, n + 1))))


def antichain_poset(n: int) -> Poset:
    return poset_from_perm(Permutation(tuple(range(n, 0, -1))))


def disjoint_chains_poset(lengths: Sequence[int]) -> Poset:
    """Disjoint union of incomparable chains, realized by stacked blocks."""
    if not lengths or any(m < 1 for m in lengths):
        raise ValidationError("chain lengths must be positive")
    values: list[int] = []
    top = sum(lengths)
    for m in lengths:
        values.extend(range(top - m + 1, top + 1))
        top -= m
    return poset_from_perm(Permutation(tuple(values)))


def dual(P: Poset) -> Poset:
    """The dimension-2 dual: comparability graphs of P and dual(P) partition all pairs."""
    if P.witness is None:
        raise ValidationError("dual requires an order-dimension-2 witness")
    return poset_from_perm(P.witness.complement())


def reverse_order(P: Poset) -> Poset:
    """Transpose the order: x below y in the output iff y below x in P.

    The transpose keeps element ids, so it cannot carry a standard-position
    witness; the result is returned witness-free.
    """
    return Poset(P.n, P.below, P.above, None)


def level_of_each(P: Poset) -> list[int]:
    """level[i] = size of the longest chain whose maximum is i (1-based levels)."""
    order = sorted(range(P.n), key=lambda i: P.below[i].bit_count())
    level = [1] * P.n
    for i in order:
        best = 0
        for j in iter_bits(P.below[i]):
            if level[j] > best:
                best = level[j]
        level[i] = best + 1
    return level


def height(P: Poset) -> int:
    if P.n == 0:
        return 0
    key = "height"
    if key not in P._cache:
        P._cache[key] = max(level_of_each(P))
    return P._cache[key]


def width(P: Poset) -> int:
    """Largest antichain, via a minimum chain cover (n minus a maximum matching).

    With a witness present the dual route is computed too and the two must
    agree; a mismatch would mean a defect, so it is asserted.
    """
    if P.n == 0:
        return 0
    key = "width"
    if key not in P._cache:
        adjacency = {i: list(iter_bits(P.above[i])) for i in range(P.n)}
        w = P.n - len(max_bipartite_matching_pairs(adjacency))
        if P.witness is not None:
            w_dual = height(dual(P))
            assert w == w_dual, f"width mismatch: matching {w} vs dual height {w_dual}"
        P._cache[key] = w
    return P._cache[key]


def max_bipartite_matching_pairs(adjacency: dict[int, list[int]]) -> dict[int, int]:
    """Hopcroft-Karp maximum matching as a left -> right map (deterministic)."""
    import sys

    limit = 4 * (len(adjacency) + 1) + 100
    if sys.getrecursionlimit() < limit:
        sys.setrecursionlimit(limit)
    INF = float("inf")
    left = sorted(adjacency)
    match_l: dict[int, int] = {}
    match_r: dict[int, int] = {}
    dist: dict[int, float] = {}

    def bfs() -> bool:
        queue = []
        for u in left:
            if u not in match_l:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = INF
        found = False
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for v in adjacency[u]:
                w = match_r.get(v)
                if w is None:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adjacency[u]:
            w = match_r.get(v)
            if w is None or (dist[w] == dist[u] + 1 and dfs(w)):
                match_l[u] = v
                match_r[v] = u
                return True
        dist[u] = INF
        return False

    while bfs():
        for u in left:
            if u not in match_l:
                dfs(u)
    return match_l


def count_chains_of_size(P: Poset, m: int) -> int:
    """Exact number of m-element chains (per-element DP in level order)."""
    if m < 1:
        raise ValidationError("chain size must be >= 1")
    if m > P.n:
        return 0
    if m == 1:
        return P.n
    order = sorted(range(P.n), key=lambda i: P.below[i].bit_count())
    preds = [list(iter_bits(P.below[i])) for i in range(P.n)]
    current = [1] * P.n
    for _ in range(m - 1):
        nxt = [0] * P.n
        for i in order:
            nxt[i] = sum(current[j] for j in preds[i])
        current = nxt
    return sum(current)


def count_chains_through(P: Poset, m: int, anchor: int) -> int:
    """Exact number of m-element chains containing the anchor element."""
    if m < 1:
        raise ValidationError("chain size must be >= 1")
    if not 0 <= anchor < P.n:
        raise ValidationError("anchor out of range")
    if m > P.n:
        return 0
    down = _chain_counts_ending_at(P, anchor, m)
    up = _chain_counts_ending_at(reverse_order(P), anchor, m)
    return sum(down[t] * up[m + 1 - t] for t in range(1, m + 1))


def _chain_counts_ending_at(P: Poset, anchor: int, m: int) -> list[int]:
    """counts[t] = number of t-element chains with maximum = anchor, t <= m."""
    order = sorted(range(P.n), key=lambda i: P.below[i].bit_count())
    preds = [list(iter_bits(P.below[i])) for i in range(P.n)]
    counts = [0] * (m + 2)
    counts[1] = 1
    current = [1] * P.n
    for t in range(2, m + 1):
        nxt = [0] * P.n
        for i in order:
            nxt[i] = sum(current[j] for j in preds[i])
        current = nxt
        counts[t] = current[anchor]
    return counts


def count_antichains_of_size(P: Poset, m: int, budgets: Budgets = DEFAULT_BUDGETS) -> int:
    """Exact number of m-element antichains.

    With a witness this is the chain count of the dual.  Without one it is
    a budgeted backtracking count over independent sets of the
    comparability graph, since the general problem blows up.
    """
    if m < 1:
        raise ValidationError("antichain size must be >= 1")
    if P.witness is not None:
        return count_chains_of_size(dual(P), m)
    if m > P.n:
        return 0
    if m == 1:
        return P.n
    comp = [P.above[i] | P.below[i] for i in range(P.n)]
    nodes = 0
    budget = budgets.antichain_node_budget

    def extend(start: int, banned: int, need: int) -> int:
        nonlocal nodes
        total = 0
        for i in range(start, P.n - need + 1):
            if banned >> i & 1:
                continue
            nodes += 1
            if nodes > budget:
                raise BudgetExceededError(
                    "antichain enumeration exceeded its node budget",
                    needed=nodes,
                    budget=budget,
                )
            if need == 1:
                total += 1
            else:
                total += extend(i + 1, banned | comp[i], need - 1)
        return total

    return extend(0, 0, m)


def h_k(P: Poset, k: int, budgets: Budgets = DEFAULT_BUDGETS) -> int:
    """Number of homogenous (k+1)-sets: chains plus antichains of size k+1."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    return count_chains_of_size(P, k + 1) + count_antichains_of_size(P, k + 1, budgets)


def surplus(P: Poset, k: int) -> int:
    """n - height*k, the distance from a k-chain decomposition."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    return P.n - height(P) * k
