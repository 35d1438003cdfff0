"""Maximum matchings, perfect-matching decisions, and deficiency certificates.

The maximum-matching routine is an augmenting-path search with blossom
contraction; a brute-force branch-and-bound oracle ships alongside it and the
test suite asserts agreement on every small graph.  Perfect-matching decisions
go through a memoized recursion over vertex subsets so that sweeps which probe
many induced subgraphs of the same graph share work.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .errors import EdgeAbsent, LimitExceeded, PreconditionUnmet
from .graph import (
    ComponentPartition,
    Graph,
    _component_masks,
    _odd_component_count,
    bits_list,
    iter_bits,
    mask_from,
    remove_edge,
)

DEFAULT_PM_LIMIT = 10**6

VIOLATOR_MODES = ("first-minimal", "all-minimal", "all")
ALL_MODE_MAX_ORDER = 16


@dataclass(frozen=True)
class Matching:
    """A set of pairwise vertex-disjoint edges of a graph of order ``n``."""

    edges: tuple[tuple[int, int], ...]
    n: int

    @classmethod
    def from_pairs(cls, g: Graph, pairs) -> Matching:
        norm = tuple(sorted((min(u, v), max(u, v)) for u, v in pairs))
        seen = 0
        for u, v in norm:
            if not g.has_edge(u, v):
                raise EdgeAbsent(f"matching uses non-edge {u}-{v}")
            pair = (1 << u) | (1 << v)
            if seen & pair:
                raise PreconditionUnmet(f"matching reuses a vertex of {u}-{v}")
            seen |= pair
        return cls(norm, g.n)

    @property
    def is_perfect(self) -> bool:
        return 2 * len(self.edges) == self.n

    @property
    def covered_mask(self) -> int:
        return mask_from(v for e in self.edges for v in e)

    def to_json(self) -> dict:
        return {
            "edges": [list(e) for e in self.edges],
            "size": len(self.edges),
            "perfect": self.is_perfect,
        }


@dataclass(frozen=True)
class TutteCertificate:
    """A vertex set X whose removal leaves more than |X| odd components."""

    x_set: int
    partition: ComponentPartition
    deficit: int

    @classmethod
    def build(cls, g: Graph, x_set: int) -> TutteCertificate:
        part = ComponentPartition.from_masks(
            _component_masks(g.adj, g.vertex_mask & ~x_set)
        )
        deficit = part.odd_count - x_set.bit_count()
        if deficit < 1:
            raise PreconditionUnmet("vertex set does not witness a deficiency")
        return cls(x_set, part, deficit)

    def to_json(self) -> dict:
        return {
            "x": bits_list(self.x_set),
            "components": self.partition.to_json(),
            "odd_components": self.partition.odd_count,
            "deficit": self.deficit,
        }


class PerfectMatcher:
    """Memoized perfect-matching decisions over induced vertex subsets.

    One instance serves every subset query against the same graph; the memo is
    keyed by the surviving-vertex bitset.  Not shared between graphs.
    """

    def __init__(self, g: Graph) -> None:
        self.adj = g.adj
        self.full = g.vertex_mask
        self._memo: dict[int, bool] = {0: True}

    def pm_exists(self, mask: int) -> bool:
        memo = self._memo
        cached = memo.get(mask)
        if cached is not None:
            return cached
        if mask.bit_count() & 1:
            memo[mask] = False
            return False
        v_bit = mask & -mask
        rest = mask ^ v_bit
        nbrs = self.adj[v_bit.bit_length() - 1] & rest
        found = False
        while nbrs:
            w_bit = nbrs & -nbrs
            nbrs ^= w_bit
            if self.pm_exists(rest ^ w_bit):
                found = True
                break
        memo[mask] = found
        return found

    def has_perfect_matching(self) -> bool:
        return self.pm_exists(self.full)


def has_perfect_matching(g: Graph, matcher: PerfectMatcher | None = None) -> bool:
    """True iff ``g`` has a perfect matching (false for odd order)."""
    if matcher is None:
        matcher = PerfectMatcher(g)
    return matcher.has_perfect_matching()


def maximum_matching(g: Graph) -> Matching:
    """A maximum-cardinality matching via augmenting paths with blossom
    contraction.  Output is normalized (edges sorted); the cardinality is the
    contract, the particular matching is not."""
    n = g.n
    adj = [bits_list(row) for row in g.adj]
    mate = [-1] * n
    for v in range(n):
        if mate[v] == -1:
            for u in adj[v]:
                if mate[u] == -1:
                    mate[v] = u
                    mate[u] = v
                    break
    for root in range(n):
        if mate[root] == -1:
            _augment_from(root, adj, mate, n)
    edges = [(v, mate[v]) for v in range(n) if mate[v] > v]
    return Matching.from_pairs(g, edges)


def _augment_from(root: int, adj: Sequence[list[int]], mate: list[int], n: int) -> bool:
    parent = [-1] * n
    base = list(range(n))
    in_tree = [False] * n
    in_tree[root] = True
    queue = deque([root])

    def find_common_base(a: int, b: int) -> int:
        on_path = [False] * n
        while True:
            a = base[a]
            on_path[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if on_path[b]:
                return b
            b = parent[mate[b]]

    def mark_blossom(v: int, stop: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != stop:
            in_blossom[base[v]] = True
            in_blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    end = -1
    while queue and end == -1:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                stop = find_common_base(v, to)
                in_blossom = [False] * n
                mark_blossom(v, stop, to, in_blossom)
                mark_blossom(to, stop, v, in_blossom)
                for i in range(n):
                    if in_blossom[base[i]]:
                        base[i] = stop
                        if not in_tree[i]:
                            in_tree[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    end = to
                    break
                in_tree[mate[to]] = True
                queue.append(mate[to])
    if end == -1:
        return False
    v = end
    while v != -1:
        pv = parent[v]
        nxt = mate[pv]
        mate[v] = pv
        mate[pv] = v
        v = nxt
    return True


def maximum_matching_bruteforce(g: Graph) -> Matching:
    """Exhaustive maximum matching; the independent oracle for the blossom code."""
    memo: dict[int, int] = {}
    adj = g.adj

    def best(mask: int) -> int:
        if mask == 0:
            return 0
        cached = memo.get(mask)
        if cached is not None:
            return cached
        v_bit = mask & -mask
        rest = mask ^ v_bit
        score = best(rest)
        nbrs = adj[v_bit.bit_length() - 1] & rest
        while nbrs:
            w_bit = nbrs & -nbrs
            nbrs ^= w_bit
            score = max(score, 1 + best(rest ^ w_bit))
        memo[mask] = score
        return score

    edges = []
    mask = g.vertex_mask
    while mask:
        v_bit = mask & -mask
        rest = mask ^ v_bit
        target = best(mask)
        if best(rest) == target:
            mask = rest
            continue
        v = v_bit.bit_length() - 1
        for w in iter_bits(adj[v] & rest):
            if 1 + best(rest ^ (1 << w)) == target:
                edges.append((v, w))
                mask = rest ^ (1 << w)
                break
    return Matching.from_pairs(g, edges)


@dataclass(frozen=True)
class PerfectMatchingEnumeration:
    matchings: tuple[Matching, ...]
    truncated: bool

    def __len__(self) -> int:
        return len(self.matchings)

    def __iter__(self) -> Iterator[Matching]:
        return iter(self.matchings)


def _perfect_matchings(adj: Sequence[int], mask: int) -> Iterator[tuple[tuple[int, int], ...]]:
    # Branch on the lowest uncovered vertex with neighbors ascending, so the
    # sorted edge lists come out in lexicographic order.
    if mask == 0:
        yield ()
        return
    v_bit = mask & -mask
    v = v_bit.bit_length() - 1
    rest = mask ^ v_bit
    for w in iter_bits(adj[v] & rest):
        for tail in _perfect_matchings(adj, rest ^ (1 << w)):
            yield ((v, w),) + tail


def enumerate_perfect_matchings(
    g: Graph, limit: int = DEFAULT_PM_LIMIT, strict: bool = False
) -> PerfectMatchingEnumeration:
    """All perfect matchings in deterministic lexicographic order.

    Truncates at ``limit`` and flags the truncation; with ``strict`` a
    truncated enumeration raises instead.  Intended for small orders.
    """
    if limit < 1:
        raise PreconditionUnmet("limit must be at least 1")
    out: list[Matching] = []
    truncated = False
    if g.n % 2 == 0:
        for pairs in _perfect_matchings(g.adj, g.vertex_mask):
            if len(out) == limit:
                truncated = True
                break
            out.append(Matching(pairs, g.n))
    if truncated and strict:
        raise LimitExceeded(f"more than {limit} perfect matchings")
    return PerfectMatchingEnumeration(tuple(out), truncated)


def forced_edge(g: Graph, e: tuple[int, int]) -> bool:
    """True iff ``e`` lies in every perfect matching of ``g`` and one exists."""
    u, v = e
    if not g.has_edge(u, v):
        raise EdgeAbsent(f"edge {u}-{v} not in graph")
    if not has_perfect_matching(g):
        return False
    return not has_perfect_matching(remove_edge(g, u, v))


def tutte_violators(g: Graph, mode: str = "first-minimal") -> list[TutteCertificate]:
    """Vertex sets X with more than |X| odd components in G - X.

    The search runs subset sizes ascending and subsets lexicographically
    within a size, so minimality of the reported X (for the minimal modes) and
    determinism are part of the contract.  The result is empty exactly when
    the graph has a perfect matching; no matching shortcut is taken, the
    subset search itself proves emptiness.
    """
    if mode not in VIOLATOR_MODES:
        raise PreconditionUnmet(f"mode must be one of {VIOLATOR_MODES}")
    if mode == "all" and g.n > ALL_MODE_MAX_ORDER:
        raise PreconditionUnmet(
            f"mode 'all' is restricted to order <= {ALL_MODE_MAX_ORDER}"
        )
    adj = g.adj
    full = g.vertex_mask
    found: list[TutteCertificate] = []
    for size in range(g.n + 1):
        for xs in combinations(range(g.n), size):
            x_mask = mask_from(xs)
            if _odd_component_count(adj, full & ~x_mask) > size:
                found.append(TutteCertificate.build(g, x_mask))
                if mode == "first-minimal":
                    return found
        if found and mode == "all-minimal":
            return found
    return found


def max_deficiency(g: Graph) -> tuple[int, int]:
    """Brute-force maximum of (odd components of G-X) - |X| over all X.

    Returns the maximum and the lexicographically first attaining set.  This
    is the independent deficiency oracle: maximum matchings have size
    (n - deficiency) / 2.
    """
    adj = g.adj
    full = g.vertex_mask
    best = -1
    best_x = 0
    for size in range(g.n + 1):
        for xs in combinations(range(g.n), size):
            x_mask = mask_from(xs)
            value = _odd_component_count(adj, full & ~x_mask) - size
            if value > best:
                best = value
                best_x = x_mask
    return best, best_x
