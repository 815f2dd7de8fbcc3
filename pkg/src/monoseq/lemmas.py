"""Standalone verified algorithms behind the auxiliary combinatorial bounds.

Each operation both computes its object exactly (shadow, distinguishing
sets, connected subtree count, chain counts) and checks the bound it is
supposed to witness, so the bound checkers double as regression oracles.
Irrational thresholds are evaluated through outward-rounded rationals: a
"bound satisfied" verdict can never be a rounding artifact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Hashable, Optional

from .errors import ValidationError
from .numeric import (
    ceil_pow2_of_sqrt_minus_one,
    exp_neg_upper,
    log2_lower,
)
from .posets import Poset, count_chains_of_size, count_chains_through, h_k, height, width


@dataclass(frozen=True)
class SetFamily:
    """A family of distinct a-element subsets of a finite ground set."""

    ground_size: int
    members: frozenset[frozenset[int]]

    def __post_init__(self):
        if self.ground_size < 0:
            raise ValidationError("ground size must be nonnegative")
        sizes = {len(m) for m in self.members}
        if len(sizes) > 1:
            raise ValidationError("members must share one cardinality")
        for m in self.members:
            if any(not 0 <= e < self.ground_size for e in m):
                raise ValidationError("member element outside the ground set")

    @property
    def member_size(self) -> int:
        return len(next(iter(self.members))) if self.members else 0

    @classmethod
    def from_lists(cls, ground_size: int, members) -> "SetFamily":
        return cls(ground_size=ground_size, members=frozenset(frozenset(m) for m in members))


def lower_shadow(family: SetFamily, b: int) -> SetFamily:
    """All b-subsets contained in some member; asserts |shadow| >= min(|F|/2, 2^b).

    The bound is the halving consequence of the shadow-size theorem; the
    shadow itself is computed by plain subset expansion since only the
    stated minimum is needed.
    """
    a = family.member_size
    if family.members and not 0 < b <= a:
        raise ValidationError(f"b must satisfy 0 < b <= {a}")
    if not family.members and b < 1:
        raise ValidationError("b must be positive")
    shadow = frozenset(
        frozenset(sub) for m in family.members for sub in combinations(sorted(m), b)
    )
    # |shadow| >= min(|F|/2, 2^b), compared with integers only.
    assert 2 * len(shadow) >= min(len(family.members), 2 ** (b + 1)), (
        f"shadow bound failed: |shadow|={len(shadow)}, |F|={len(family.members)}, b={b}"
    )
    return SetFamily(ground_size=family.ground_size, members=shadow)


@dataclass(frozen=True)
class FunctionTable:
    """Pairwise distinct functions domain -> anything, given as rows."""

    domain: tuple[Hashable, ...]
    rows: tuple[tuple[Hashable, ...], ...]

    def __post_init__(self):
        if len(set(self.domain)) != len(self.domain):
            raise ValidationError("domain has repeated points")
        for row in self.rows:
            if len(row) != len(self.domain):
                raise ValidationError("row length does not match the domain")
        if len(set(self.rows)) != len(self.rows):
            raise ValidationError("rows must be pairwise distinct")


def distinguishing_sets(table: FunctionTable) -> list[frozenset[Hashable]]:
    """Small domain subsets on whose pairwise unions all rows stay distinct.

    Recursive construction: split on the least domain point where rows
    disagree, leave the largest value class unmarked (ties broken by least
    value), and recurse into each class.  Every returned set has size at
    most log2(M) and any two rows differ on the union of their sets; both
    postconditions are asserted.
    """
    M = len(table.rows)
    if M == 0:
        return []
    sets = [set() for _ in range(M)]
    _split(table.domain, table.rows, list(range(M)), sets)

    for i, s in enumerate(sets):
        assert (1 << len(s)) <= M, f"set {i} larger than log2(M): {s}"
    dom_index = {x: pos for pos, x in enumerate(table.domain)}
    for i in range(M):
        for j in range(i + 1, M):
            union = sets[i] | sets[j]
            assert any(
                table.rows[i][dom_index[x]] != table.rows[j][dom_index[x]] for x in union
            ), f"rows {i} and {j} agree on their union"
    return [frozenset(s) for s in sets]


def _split(domain, rows, live: list[int], sets: list[set]) -> None:
    if len(live) <= 1:
        return
    split_pos = None
    for pos in range(len(domain)):
        vals = {rows[i][pos] for i in live}
        if len(vals) > 1:
            split_pos = pos
            break
    assert split_pos is not None, "distinct rows must disagree somewhere"
    classes: dict = {}
    for i in live:
        classes.setdefault(rows[i][split_pos], []).append(i)
    # Deterministic tie-breaks: split on the least disagreeing domain point
    # (found above) and leave unmarked the least value among the largest
    # classes.  Values must therefore be orderable.
    biggest = max(len(members) for members in classes.values())
    majority = min(y for y, members in classes.items() if len(members) == biggest)
    for y, members in classes.items():
        if y != majority:
            for i in members:
                sets[i].add(domain[split_pos])
        _split(domain, rows, members, sets)


@dataclass(frozen=True)
class LabeledTree:
    """A tree on vertices 0..t-1 given by its t-1 edges."""

    t: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.t < 1:
            raise ValidationError("a tree needs at least one vertex")
        if len(self.edges) != self.t - 1:
            raise ValidationError("a tree on t vertices has t-1 edges")
        parent = list(range(self.t))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            if not (0 <= a < self.t and 0 <= b < self.t) or a == b:
                raise ValidationError(f"bad edge ({a}, {b})")
            ra, rb = find(a), find(b)
            if ra == rb:
                raise ValidationError("edges contain a cycle")
            parent[ra] = rb


def count_connected_subsets(tree: LabeledTree, c: int) -> int:
    """Exact number of connected c-vertex subsets; asserts the t-c+1 floor.

    Rooted DP: for each vertex, count connected sets containing it that
    stay inside its subtree, convolving children one at a time.  Summing
    over the topmost vertex of each subset counts every set once.
    """
    t = tree.t
    if not 1 <= c <= t:
        raise ValidationError(f"c must satisfy 1 <= c <= {t}")
    adj: list[list[int]] = [[] for _ in range(t)]
    for a, b in tree.edges:
        adj[a].append(b)
        adj[b].append(a)

    order: list[int] = []
    parent = [-1] * t
    stack = [0]
    seen = [False] * t
    seen[0] = True
    while stack:
        x = stack.pop()
        order.append(x)
        for y in adj[x]:
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                stack.append(y)

    # poly[x][s] = connected subsets of size s containing x within x's subtree
    poly: list[list[int]] = [[] for _ in range(t)]
    for x in reversed(order):
        cur = [0, 1]
        for y in adj[x]:
            if parent[y] == x:
                child = poly[y]
                new = [0] * (min(c, len(cur) + len(child) - 2) + 1)
                for s1 in range(1, len(cur)):
                    if cur[s1] == 0:
                        continue
                    for s0 in range(len(child)):
                        if s0 == 0:
                            s, add = s1, cur[s1]
                        else:
                            s, add = s1 + s0, cur[s1] * child[s0]
                        if s < len(new):
                            new[s] += add
                cur = new
        poly[x] = cur

    total = sum(poly[x][c] if c < len(poly[x]) else 0 for x in range(t))
    assert total >= t - c + 1, f"connected-set floor failed: {total} < {t - c + 1}"
    return total


@dataclass(frozen=True)
class SignatureBoundReport:
    k: int
    ell: int
    anchor: Optional[int]
    preconditions_hold: bool
    precondition_detail: str
    max_chain_count: int
    bound: Optional[Fraction]
    chain_count: Optional[int]
    satisfied: Optional[bool]

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "ell": self.ell,
            "anchor": None if self.anchor is None else self.anchor + 1,
            "preconditions_hold": self.preconditions_hold,
            "precondition_detail": self.precondition_detail,
            "max_chain_count": str(self.max_chain_count),
            "bound": None if self.bound is None else str(self.bound),
            "chain_count": None if self.chain_count is None else str(self.chain_count),
            "satisfied": self.satisfied,
        }


def signature_bound_check(
    P: Poset, k: int, ell: int, anchor: Optional[int] = None
) -> SignatureBoundReport:
    """Check that many maximum chains force many (k+1)-chains.

    With M maximum chains (through the anchor, if given) and
    m = log2(M) + 1 <= k/4, the poset of height k + ell must contain at
    least exp(-2(ell-1)m/k) * M * C(k+ell, k+1) chains of length k+1
    (through the anchor).  The exponential is replaced by a rational upper
    bound of the exact threshold, so "satisfied" verdicts are sound; on the
    preconditions this is a theorem, so an unsatisfied verdict means a
    defect.
    """
    if k < 1 or ell < 1:
        raise ValidationError("k and ell must be positive")
    h = height(P)
    if h != k + ell:
        raise ValidationError(f"height is {h}, expected k + ell = {k + ell}")
    if anchor is not None and not 0 <= anchor < P.n:
        raise ValidationError("anchor out of range")

    if anchor is None:
        M = count_chains_of_size(P, h)
    else:
        M = count_chains_through(P, h, anchor)
    if M < 1:
        return SignatureBoundReport(
            k, ell, anchor, False, "no maximum chains (M = 0)", 0, None, None, None
        )
    # m = log2(M) + 1 <= k/4  <=>  M^4 <= 2^(k-4)
    if M**4 > (1 << (k - 4) if k >= 4 else 0):
        return SignatureBoundReport(
            k, ell, anchor, False, f"m = log2({M}) + 1 exceeds k/4", M, None, None, None
        )

    m_low = log2_lower(M) + 1
    x_low = Fraction(2 * (ell - 1), k) * m_low
    bound = exp_neg_upper(x_low) * M * comb(k + ell, k + 1)
    if anchor is None:
        chains = count_chains_of_size(P, k + 1)
    else:
        chains = count_chains_through(P, k + 1, anchor)
    return SignatureBoundReport(
        k, ell, anchor, True, "", M, bound, chains, Fraction(chains) >= bound
    )


@dataclass(frozen=True)
class SurplusBoundReport:
    k: int
    t: int
    preconditions: dict[str, bool]
    preconditions_hold: bool
    homogenous_count: int
    threshold: int
    conclusion_holds: bool
    verdict: Optional[bool]  # None when preconditions fail; small-k failures are reported, not raised

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "t": self.t,
            "preconditions": dict(self.preconditions),
            "preconditions_hold": self.preconditions_hold,
            "homogenous_count": str(self.homogenous_count),
            "threshold": str(self.threshold),
            "conclusion_holds": self.conclusion_holds,
            "verdict": self.verdict,
        }


def surplus_conclusion_check(P: Poset, k: int, t: int) -> SurplusBoundReport:
    """Compare the homogenous-set count against the 2^(sqrt(t)-1) floor.

    Preconditions: 0 < t <= k/2, height >= width, and k-surplus >= 3t.
    The comparison is always computed; the verdict is withheld when the
    preconditions fail, and a failed conclusion at small k is a recorded
    observation rather than an error (the floor is asymptotic).
    """
    if k < 1 or t < 1:
        raise ValidationError("k and t must be positive")
    pre = {
        "t_at_most_half_k": 2 * t <= k,
        "height_at_least_width": height(P) >= width(P),
        "surplus_at_least_3t": P.n - height(P) * k >= 3 * t,
    }
    ok = all(pre.values())
    count = h_k(P, k)
    threshold = ceil_pow2_of_sqrt_minus_one(t)
    holds = count >= threshold
    return SurplusBoundReport(
        k=k,
        t=t,
        preconditions=pre,
        preconditions_hold=ok,
        homogenous_count=count,
        threshold=threshold,
        conclusion_holds=holds,
        verdict=holds if ok else None,
    )
