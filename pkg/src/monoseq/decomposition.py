"""Canonical decomposition of a poset into antichain levels, plus the
structural statistics built on top of it.

Level i collects the elements whose longest chain ending there has exactly
i elements, so level 1 is the set of minimal elements and each level is an
antichain.  Between consecutive levels sits a bipartite graph of all
comparable pairs; counting maximum-length chain tails through it gives the
u-values and their level sums, from which all derived sets (elements on a
maximum chain, low-degree elements, and the level index sets that flag
oversized antichains) follow.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ValidationError
from .numeric import log2_upper, sqrt_upper
from .perms import param_split
from .posets import (
    Poset,
    count_antichains_of_size,
    count_chains_of_size,
    height,
    iter_bits,
    level_of_each,
    max_bipartite_matching_pairs,
    width,
)


@dataclass(frozen=True)
class Decomposition:
    """Levels, inter-level graphs, tail counts, and the derived sets.

    All element ids are 0-based; ``levels[0]`` is the set of minimal
    elements.  ``hasse[i]`` holds the comparable pairs between levels i+1
    and i+2 as (lower, upper) tuples.  ``u[x]`` counts the chains of length
    h - level(x) + 1 whose minimum is x; ``sigma[i]`` is its sum over level
    i+1, so ``sigma[0]`` is the number of maximum chains.

    Derived sets per level: ``a_prime`` (u >= 1), ``a_double_prime``
    (u >= 2), ``b`` (upper-level a_prime elements with exactly one
    down-neighbor), ``b_all`` (same but over the whole upper level, the
    variant some arguments need), ``d`` (down-degree exactly two), and
    ``c`` (a_prime elements with at most one up-neighbor in the next
    level's a_prime).
    """

    levels: list[list[int]]
    hasse: list[list[tuple[int, int]]]
    u: list[int]
    sigma: list[int]
    a_prime: list[list[int]]
    a_double_prime: list[list[int]]
    b: list[list[int]]
    b_all: list[list[int]]
    c: list[list[int]]
    d: list[list[int]]

    @property
    def h(self) -> int:
        return len(self.levels)


def decompose(P: Poset) -> Decomposition:
    key = "decomposition"
    if key not in P._cache:
        P._cache[key] = _decompose(P)
    return P._cache[key]


def _decompose(P: Poset) -> Decomposition:
    n = P.n
    level = level_of_each(P)
    h = max(level) if n else 0
    levels: list[list[int]] = [[] for _ in range(h)]
    for x in range(n):
        levels[level[x] - 1].append(x)

    hasse: list[list[tuple[int, int]]] = []
    up_adj: list[dict[int, list[int]]] = []
    down_deg = [0] * n
    for i in range(h - 1):
        edges = []
        adj: dict[int, list[int]] = {}
        upper = set(levels[i + 1])
        for x in levels[i]:
            nbrs = [y for y in iter_bits(P.above[x]) if y in upper]
            adj[x] = nbrs
            for y in nbrs:
                edges.append((x, y))
                down_deg[y] += 1
        hasse.append(edges)
        up_adj.append(adj)

    u = [0] * n
    for x in levels[h - 1] if h else []:
        u[x] = 1
    for i in range(h - 2, -1, -1):
        for x in levels[i]:
            u[x] = sum(u[y] for y in up_adj[i][x])
    sigma = [sum(u[x] for x in lvl) for lvl in levels]

    a_prime = [[x for x in lvl if u[x] >= 1] for lvl in levels]
    a_double_prime = [[x for x in lvl if u[x] >= 2] for lvl in levels]

    b: list[list[int]] = [[]]
    b_all: list[list[int]] = [[]]
    d: list[list[int]] = [[]]
    for i in range(h - 1):
        prime_upper = [y for y in levels[i + 1] if u[y] >= 1]
        b.append([y for y in prime_upper if down_deg[y] == 1])
        b_all.append([y for y in levels[i + 1] if down_deg[y] == 1])
        d.append([y for y in prime_upper if down_deg[y] == 2])

    c: list[list[int]] = []
    for i in range(h - 1):
        prime_upper = {y for y in levels[i + 1] if u[y] >= 1}
        c.append(
            [x for x in a_prime[i] if sum(1 for y in up_adj[i][x] if y in prime_upper) <= 1]
        )
    if h:
        c.append([])

    return Decomposition(
        levels=levels,
        hasse=hasse,
        u=u,
        sigma=sigma,
        a_prime=a_prime,
        a_double_prime=a_double_prime,
        b=b,
        b_all=b_all,
        c=c,
        d=d,
    )


@dataclass(frozen=True)
class IndexSets:
    """Level indices (1-based) where antichain-size thresholds are exceeded.

    ``f``: levels of size >= k+1.  ``f_prime``: levels i where swapping the
    dead part of level i for the live part of level i+1 reaches size k+1.
    ``f_double_prime``: the analogous set built from u >= 2 elements, only
    defined below max(f_prime).  ``s`` is the chain-count threshold
    (1 + q/ell)k + 50*sqrt(k)*log2(k) as an outward-rounded rational, absent
    when n <= k(k+1) where the ell,q split degenerates.
    """

    k: int
    f: frozenset[int]
    f_prime: frozenset[int]
    f_double_prime: frozenset[int]
    s: Optional[Fraction]
    surplus: int


def index_sets(P: Poset, k: int) -> IndexSets:
    if k < 1:
        raise ValidationError("k must be >= 1")
    dec = decompose(P)
    h = dec.h
    sizes = [len(lvl) for lvl in dec.levels]
    prime = [len(lvl) for lvl in dec.a_prime]
    dprime = [len(lvl) for lvl in dec.a_double_prime]

    f = frozenset(i + 1 for i in range(h) if sizes[i] >= k + 1)
    f_prime = frozenset(
        i + 1 for i in range(h - 1) if sizes[i] - prime[i] + prime[i + 1] >= k + 1
    )
    f_double_prime: frozenset[int] = frozenset()
    if f_prime:
        fp_max = max(f_prime)
        f_double_prime = frozenset(
            i + 1
            for i in range(fp_max - 1)
            if dprime[i + 1] - dprime[i] + sizes[i] >= k + 1
        )

    s_threshold: Optional[Fraction] = None
    if P.n > k * (k + 1):
        split = param_split(k, P.n)
        s_threshold = (1 + Fraction(split.q, split.ell)) * k + 50 * sqrt_upper(k) * log2_upper(k)

    return IndexSets(
        k=k,
        f=f,
        f_prime=f_prime,
        f_double_prime=f_double_prime,
        s=s_threshold,
        surplus=P.n - h * k,
    )


@dataclass(frozen=True)
class ChainCoverResult:
    """Outcome of the level-to-level disjoint chain cover construction."""

    chains: list[list[int]]
    d: int
    k: int
    violations: list[tuple[int, int]]  # (level, |a_prime at that level|) where != k


def disjoint_chain_cover(P: Poset, i: int, j: int) -> ChainCoverResult:
    """Maximum family of disjoint chains from level i's live part to level j's.

    Built by reverse induction: start from the live elements of level j as
    singleton chains, then repeatedly extend downward along a maximum
    matching in the inter-level graph, dropping chains that cannot be
    extended disjointly.  The deficiency d = k - (chains kept) is certified
    by the matching rather than recomputed from a Hall condition.

    Levels are 1-based.  The construction expects every a_prime level in
    i..j to have the same size k; unequal levels are reported in
    ``violations`` (with the cover still computed from k = |a_prime_i|).
    """
    dec = decompose(P)
    h = dec.h
    if not (1 <= i <= j <= h):
        raise ValidationError(f"levels must satisfy 1 <= i <= j <= {h}")
    k = len(dec.a_prime[i - 1])
    violations = [
        (m, len(dec.a_prime[m - 1]))
        for m in range(i, j + 1)
        if len(dec.a_prime[m - 1]) != k
    ]

    chains = [[y] for y in sorted(dec.a_prime[j - 1])]
    for m in range(j - 1, i - 1, -1):
        lower_live = set(dec.a_prime[m - 1])
        heads = {ch[0]: ch for ch in chains}
        adjacency = {
            x: sorted(y for y in iter_bits(P.above[x]) if y in heads)
            for x in sorted(lower_live)
        }
        matching = max_bipartite_matching_pairs(adjacency)
        chains = [[x] + heads[y] for x, y in sorted(matching.items())]

    d = k - len(chains)
    if not violations:
        assert dec.sigma[i - 1] >= dec.sigma[j - 1] + d, "chain-cover deficiency bound failed"
    return ChainCoverResult(chains=chains, d=d, k=k, violations=violations)


@dataclass(frozen=True)
class ClauseResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class ExampleStructureReport:
    case: Optional[str]  # "i", "ii", or None if the shape clause failed
    clauses: list[ClauseResult]

    @property
    def passed(self) -> bool:
        return all(cl.ok for cl in self.clauses)

    @property
    def first_failure(self) -> Optional[str]:
        for cl in self.clauses:
            if not cl.ok:
                return cl.name
        return None

    def to_json_dict(self) -> dict:
        return {
            "case": self.case,
            "passed": self.passed,
            "first_failure": self.first_failure,
            "clauses": [
                {"name": cl.name, "ok": cl.ok, "detail": cl.detail} for cl in self.clauses
            ],
        }


def verify_example_structure(P: Poset, k: int) -> ExampleStructureReport:
    """Check every structural clause of the mixed-type extremal family.

    Applies only at n = k^2 + k + 1.  Clauses: k+1 minimal elements; the
    rest splits into k chains and into k antichains (all of size exactly
    k); exactly k maximum chains in the rest; second level of size k; the
    comparability graph on the bottom two levels is a path on 2k+1 vertices
    (case i) or a path on 2k-1 vertices plus a disjoint edge (case ii); in
    case ii the literal ordering condition between the path and the chain
    hanging off the stray second-level element; and the homogenous-set
    split (2k chains + 1 antichain, or 2k-1 chains + 2 antichains).

    The case-ii ordering clause follows the literal reading of the
    condition and is reported as its own clause so an alternative parse
    can be swapped in without disturbing the rest.
    """
    if k < 2:
        raise ValidationError("k must be >= 2")
    if P.n != k * k + k + 1:
        raise ValidationError(f"expected n = k^2+k+1 = {k*k+k+1}, got {P.n}")

    clauses: list[ClauseResult] = []
    dec = decompose(P)
    a1 = dec.levels[0] if dec.h >= 1 else []
    clauses.append(
        ClauseResult("minimal-level-size", len(a1) == k + 1, f"|A_1| = {len(a1)}")
    )
    if not clauses[-1].ok:
        return ExampleStructureReport(case=None, clauses=clauses)

    rest = P.delete(a1)
    w_rest, h_rest = width(rest), height(rest)
    clauses.append(
        ClauseResult("rest-chain-cover", w_rest == k, f"width(P \\ A_1) = {w_rest}")
    )
    clauses.append(
        ClauseResult("rest-antichain-cover", h_rest == k, f"height(P \\ A_1) = {h_rest}")
    )
    max_chains_rest = count_chains_of_size(rest, k)
    clauses.append(
        ClauseResult(
            "rest-max-chain-count", max_chains_rest == k, f"{max_chains_rest} chains of size k"
        )
    )
    a2 = dec.levels[1] if dec.h >= 2 else []
    clauses.append(ClauseResult("second-level-size", len(a2) == k, f"|A_2| = {len(a2)}"))

    case, shape_detail, path_nodes, edge_nodes = _bottom_two_level_shape(P, a1, a2, k)
    clauses.append(ClauseResult("comparability-shape", case is not None, shape_detail))

    if case == "ii":
        clauses.append(_case_two_order_clause(P, k, a1, a2, path_nodes, edge_nodes))

    if case is not None:
        chains = count_chains_of_size(P, k + 1)
        antichains = count_antichains_of_size(P, k + 1)
        want_chains = 2 * k if case == "i" else 2 * k - 1
        want_antichains = 1 if case == "i" else 2
        clauses.append(
            ClauseResult(
                "homogenous-split",
                chains == want_chains and antichains == want_antichains,
                f"{chains} chains and {antichains} antichains of size k+1",
            )
        )

    return ExampleStructureReport(case=case, clauses=clauses)


def _bottom_two_level_shape(P: Poset, a1: list[int], a2: list[int], k: int):
    """Classify the comparability graph on the bottom two levels."""
    nodes = sorted(a1) + sorted(a2)
    adj: dict[int, list[int]] = {x: [] for x in nodes}
    for x in a1:
        for y in a2:
            if P.comparable(x, y):
                adj[x].append(y)
                adj[y].append(x)

    seen: set[int] = set()
    components: list[list[int]] = []
    for start in nodes:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = [start]
        while queue:
            x = queue.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        components.append(comp)

    def is_path(comp: list[int]) -> bool:
        if len(comp) == 1:
            return True
        degs = sorted(len(adj[x]) for x in comp)
        edges = sum(len(adj[x]) for x in comp) // 2
        return edges == len(comp) - 1 and degs[0] == degs[1] == 1 and degs[-1] <= 2

    sizes = sorted(len(cmp) for cmp in components)
    if sizes == [2 * k + 1] and is_path(components[0]):
        return "i", "path on 2k+1 vertices", components[0], []
    if sizes == [2, 2 * k - 1]:
        big = max(components, key=len)
        small = min(components, key=len)
        if is_path(big) and is_path(small):
            return "ii", "path on 2k-1 vertices plus an edge", big, small
    detail = f"components of sizes {sizes} (neither admissible shape)"
    return None, detail, [], []


def _case_two_order_clause(
    P: Poset, k: int, a1: list[int], a2: list[int], path_nodes: list[int], edge_nodes: list[int]
) -> ClauseResult:
    stray = [y for y in edge_nodes if y in set(a2)]
    if len(stray) != 1:
        return ClauseResult(
            "path-chain-order", False, f"stray edge holds {len(stray)} second-level elements"
        )
    z = stray[0]
    rest = sorted(set(range(P.n)) - set(a1))
    sub = P.induced(rest)
    back = {idx: e for idx, e in enumerate(rest)}
    chains = [[back[x] for x in ch] for ch in _max_chains(sub) if back[ch[0]] == z]
    if len(chains) != 1:
        return ClauseResult(
            "path-chain-order", False, f"{len(chains)} maximum chains start at the stray element"
        )
    second = chains[0][1]
    path_a1 = [x for x in path_nodes if x in set(a1)]
    ok = any(P.less(a, second) for a in path_a1)
    return ClauseResult(
        "path-chain-order",
        ok,
        "a path element of A_1 lies below the chain's second element"
        if ok
        else "no path element of A_1 lies below the chain's second element",
    )


def _max_chains(P: Poset) -> list[list[int]]:
    """All maximum-length chains, as level-by-level element lists."""
    dec = decompose(P)
    if dec.h == 0:
        return []
    upper_live = [set(lvl) for lvl in dec.a_prime]
    chains: list[list[int]] = []

    def extend(chain: list[int], i: int) -> None:
        if i == dec.h:
            chains.append(list(chain))
            return
        for y in sorted(upper_live[i]):
            if P.less(chain[-1], y):
                chain.append(y)
                extend(chain, i + 1)
                chain.pop()

    for x in sorted(dec.a_prime[0]):
        extend([x], 1)
    return chains
