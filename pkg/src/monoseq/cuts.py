"""Height-reducing cuts and the two-step pruning procedure.

A height-reducing set is a set of elements meeting every maximum-length
chain; deleting a minimum one lowers the height by exactly one.  The
minimum cut is found by unit-capacity max flow on the vertex-split graph
of elements that lie on some maximum chain, and made deterministic by
greedily committing the lowest-indexed element that still admits a
minimum cut through it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import ValidationError
from .posets import Poset, dual, height, iter_bits, level_of_each, width


class _FlowNet:
    """Unit/infinite capacity flow network (Dinic)."""

    def __init__(self, size: int):
        self.size = size
        self.to: list[int] = []
        self.cap: list[int] = []
        self.adj: list[list[int]] = [[] for _ in range(size)]

    def add_edge(self, u: int, v: int, cap: int) -> None:
        self.adj[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(cap)
        self.adj[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def max_flow(self, s: int, t: int) -> int:
        import sys

        if sys.getrecursionlimit() < 2 * self.size + 100:
            sys.setrecursionlimit(2 * self.size + 100)
        flow = 0
        while True:
            level = [-1] * self.size
            level[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for eid in self.adj[u]:
                    v = self.to[eid]
                    if self.cap[eid] > 0 and level[v] < 0:
                        level[v] = level[u] + 1
                        queue.append(v)
            if level[t] < 0:
                return flow
            it = [0] * self.size

            def dfs(u: int, pushed: int) -> int:
                if u == t:
                    return pushed
                while it[u] < len(self.adj[u]):
                    eid = self.adj[u][it[u]]
                    v = self.to[eid]
                    if self.cap[eid] > 0 and level[v] == level[u] + 1:
                        got = dfs(v, min(pushed, self.cap[eid]))
                        if got:
                            self.cap[eid] -= got
                            self.cap[eid ^ 1] += got
                            return got
                    it[u] += 1
                return 0

            while True:
                pushed = dfs(s, 1 << 62)
                if not pushed:
                    break
                flow += pushed


def _max_chain_elements(P: Poset) -> tuple[list[int], list[int]]:
    """Elements on some maximum-length chain, with their levels."""
    level = level_of_each(P)
    h = max(level) if P.n else 0
    rev = Poset(P.n, P.below, P.above, None)
    up = level_of_each(rev)
    members = [x for x in range(P.n) if level[x] + up[x] - 1 == h]
    return members, level


def _min_cut_size(P: Poset, removed: frozenset[int]) -> int:
    """Minimum number of elements (outside `removed`) meeting every maximum chain."""
    members, level = _max_chain_elements(P)
    members = [x for x in members if x not in removed]
    h = height(P)
    if h == 0:
        return 0
    idx = {x: t for t, x in enumerate(members)}
    m = len(members)
    src, sink = 2 * m, 2 * m + 1
    net = _FlowNet(2 * m + 2)
    INF = 1 << 60
    for x in members:
        t = idx[x]
        net.add_edge(2 * t, 2 * t + 1, 1)
        if level[x] == 1:
            net.add_edge(src, 2 * t, INF)
        if level[x] == h:
            net.add_edge(2 * t + 1, sink, INF)
        for y in iter_bits(P.above[x]):
            if y in idx and level[y] == level[x] + 1:
                net.add_edge(2 * t + 1, 2 * idx[y], INF)
    return net.max_flow(src, sink)


def min_height_reducing_set(P: Poset) -> list[int]:
    """Lexicographically least minimum set whose deletion reduces the height.

    Computed by max flow over the maximum-chain elements, then committing
    elements in ascending id order whenever a minimum cut still exists
    through them.  Every maximum chain meets the result, so deletion drops
    the height by exactly one.
    """
    if height(P) < 1:
        raise ValidationError("height-reducing set undefined for an empty poset")
    target = _min_cut_size(P, frozenset())
    chosen: list[int] = []
    removed: set[int] = set()
    remaining = target
    members, _ = _max_chain_elements(P)
    for x in sorted(members):
        if remaining == 0:
            break
        trial = frozenset(removed | {x})
        if _min_cut_size(P, trial) == remaining - 1:
            chosen.append(x)
            removed.add(x)
            remaining -= 1
    assert len(chosen) == target, "greedy cut extraction failed"
    return chosen


@dataclass(frozen=True)
class PruneRound:
    removed: Optional[tuple[int, ...]]  # ids in the labeling current at that round
    flipped: bool
    size_after: int
    height_after: int
    width_after: int


@dataclass(frozen=True)
class PruneResult:
    poset: Poset
    rounds: list[PruneRound]

    def to_json_dict(self) -> dict:
        return {
            "final": self.poset.to_json_dict(),
            "rounds": [
                {
                    "removed": list(r.removed) if r.removed is not None else None,
                    "flipped": r.flipped,
                    "size_after": r.size_after,
                    "height_after": r.height_after,
                    "width_after": r.width_after,
                }
                for r in self.rounds
            ],
        }


def prune(P: Poset, k: int, t: int) -> PruneResult:
    """Repeat: delete a minimum height-reducing set of size <= t, then flip
    to the dual if the height fell below the width; stop at a fixpoint or
    the empty poset.

    Needs a witness because the flip takes duals.  Removed ids are recorded
    in the labeling current at each round (deletions relabel).  ``k`` only
    scopes the run; the procedure itself does not depend on it.
    """
    if P.witness is None and P.n > 0:
        raise ValidationError("prune requires an order-dimension-2 witness")
    if t < 1:
        raise ValidationError("t must be >= 1")
    _ = k
    rounds: list[PruneRound] = []
    current = P
    while current.n > 0:
        removed: Optional[tuple[int, ...]] = None
        flipped = False
        cut = min_height_reducing_set(current)
        if len(cut) <= t:
            removed = tuple(cut)
            current = current.delete(cut)
        if current.n > 0 and height(current) < width(current):
            current = dual(current)
            flipped = True
        if removed is None and not flipped:
            break
        rounds.append(
            PruneRound(
                removed=removed,
                flipped=flipped,
                size_after=current.n,
                height_after=height(current) if current.n else 0,
                width_after=width(current) if current.n else 0,
            )
        )
    return PruneResult(poset=current, rounds=rounds)
