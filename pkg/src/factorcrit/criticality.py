"""k-factor-criticality tests, minimality witnesses, and soundness alarms.

A graph of order n is k-factor-critical when deleting any k vertices leaves a
perfect matching, and minimally so when additionally no single edge can be
dropped without destroying the property.  The definitional sweep and the
odd-component counting characterization are implemented independently and the
suite asserts they agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .errors import (
    EdgeAbsent,
    KOutOfRange,
    NotCritical,
    NotMinimallyCritical,
    ParityMismatch,
    PreconditionUnmet,
    TheoremViolated,
)
from .graph import (
    Graph,
    _odd_component_count,
    add_edge,
    bits_list,
    connectivity,
    delete_vertices,
    mask_from,
    remove_edge,
)
from .matching import PerfectMatcher, forced_edge

METHOD_DEFINITIONAL = "definitional"
METHOD_TUTTE = "tutte-type"


@dataclass(frozen=True)
class CriticalityReport:
    """Outcome of a k-factor-criticality test.

    A false verdict always carries a checkable failing set: a k-set whose
    removal kills every perfect matching (definitional), or a violating set B
    with more than |B| - k odd components (tutte-type).
    """

    k: int
    verdict: bool
    failing_set: int | None
    method: str

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "verdict": self.verdict,
            "failing_set": None if self.failing_set is None else bits_list(self.failing_set),
            "method": self.method,
        }


@dataclass(frozen=True)
class MinimalityCertificate:
    """Per-edge witness sets proving a k-factor-critical graph minimal.

    For each edge e = uv the witness S_e is a k-set disjoint from {u, v} such
    that G - S_e has a perfect matching and every one of them contains e.
    """

    k: int
    witnesses: dict[tuple[int, int], int]

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "witnesses": {f"{u},{v}": bits_list(s) for (u, v), s in self.witnesses.items()},
        }


def _validate_k(g: Graph, k: int) -> None:
    if not 0 <= k < g.n:
        raise KOutOfRange(f"k={k} outside 0..{g.n - 1}")
    if (g.n - k) % 2:
        raise ParityMismatch(f"k={k} and order {g.n} have different parity")


def is_k_factor_critical(
    g: Graph, k: int, matcher: PerfectMatcher | None = None
) -> CriticalityReport:
    """Definitional test: every k-subset removal must leave a perfect matching.

    Scans k-subsets in lexicographic order with early exit, so a false verdict
    reports the lexicographically first failing set.  ``matcher`` may be a
    memoized matcher for the same graph, shared across calls.
    """
    _validate_k(g, k)
    if matcher is None:
        matcher = PerfectMatcher(g)
    full = g.vertex_mask
    for subset in combinations(range(g.n), k):
        s_mask = mask_from(subset)
        if not matcher.pm_exists(full & ~s_mask):
            return CriticalityReport(k, False, s_mask, METHOD_DEFINITIONAL)
    return CriticalityReport(k, True, None, METHOD_DEFINITIONAL)


def kfc_via_tutte(g: Graph, k: int) -> CriticalityReport:
    """Odd-component characterization: k-factor-critical iff every B with
    |B| >= k leaves at most |B| - k odd components.  Exponential in n; meant
    for the small orders where it cross-checks the definitional test."""
    _validate_k(g, k)
    adj = g.adj
    full = g.vertex_mask
    for size in range(k, g.n + 1):
        for subset in combinations(range(g.n), size):
            b_mask = mask_from(subset)
            if _odd_component_count(adj, full & ~b_mask) > size - k:
                return CriticalityReport(k, False, b_mask, METHOD_TUTTE)
    return CriticalityReport(k, True, None, METHOD_TUTTE)


def is_minimally_kfc(g: Graph, k: int) -> bool:
    """True iff g is k-factor-critical but no single-edge deletion is."""
    if not is_k_factor_critical(g, k).verdict:
        return False
    for u, v in g.edges():
        if is_k_factor_critical(remove_edge(g, u, v), k).verdict:
            return False
    return True


def iter_minimality_witnesses(g: Graph, k: int, e: tuple[int, int]) -> Iterator[int]:
    """All k-sets S disjoint from e with e forced in G - S, lexicographically.

    Does not verify that g is k-factor-critical; witness existence only links
    to minimality of the edge under that precondition.
    """
    u, v = e
    if not g.has_edge(u, v):
        raise EdgeAbsent(f"edge {u}-{v} not in graph")
    _validate_k(g, k)
    others = [w for w in range(g.n) if w != u and w != v]
    for subset in combinations(others, k):
        s_mask = mask_from(subset)
        residual, index_map = delete_vertices(g, s_mask)
        if forced_edge(residual, (index_map[u], index_map[v])):
            yield s_mask


def minimality_witness(g: Graph, k: int, e: tuple[int, int]) -> int | None:
    """Lexicographically first witness set for edge ``e``, or None.

    Absence means G - e is still k-factor-critical.  The k-factor-criticality
    precondition is checked lazily: only when no witness exists, since a
    found witness needs no such backing to be verifiable.
    """
    for s_mask in iter_minimality_witnesses(g, k, e):
        return s_mask
    if not is_k_factor_critical(g, k).verdict:
        raise NotCritical(f"graph is not {k}-factor-critical")
    return None


def minimality_certificate(g: Graph, k: int) -> MinimalityCertificate:
    """Witness sets for every edge; raises if the graph is not minimal."""
    if not is_k_factor_critical(g, k).verdict:
        raise NotCritical(f"graph is not {k}-factor-critical")
    witnesses: dict[tuple[int, int], int] = {}
    for e in g.edges():
        found = next(iter_minimality_witnesses(g, k, e), None)
        if found is None:
            raise NotMinimallyCritical(f"edge {e} has no witness set")
        witnesses[e] = found
    return MinimalityCertificate(k, witnesses)


def ps_reduction_check(
    g: Graph, k: int, x: int, y: int, raise_on_violation: bool = False
) -> bool:
    """Criticality must be invariant under adding a non-edge xy whose degree
    sum is at least n + k - 1.  Always expected true; a false return is a
    soundness alarm, raised as TheoremViolated in verification mode."""
    _validate_k(g, k)
    if g.has_edge(x, y) or x == y:
        raise PreconditionUnmet(f"{x},{y} must be a non-adjacent pair")
    if g.degree(x) + g.degree(y) < g.n + k - 1:
        raise PreconditionUnmet(
            f"degree sum {g.degree(x) + g.degree(y)} below {g.n + k - 1}"
        )
    before = is_k_factor_critical(g, k).verdict
    after = is_k_factor_critical(add_edge(g, x, y), k).verdict
    agree = before == after
    if not agree and raise_on_violation:
        raise TheoremViolated(
            f"adding {x}-{y} changed {k}-factor-criticality ({before} -> {after})"
        )
    return agree


def downward_criticality_check(
    g: Graph, k: int, raise_on_violation: bool = False
) -> bool:
    """Structural consequences of k-factor-criticality, k >= 1: the graph is
    k-connected, (k+1)-edge-connected, and (k-2)-factor-critical when k >= 2.
    Expected true; a false return is a soundness alarm."""
    _validate_k(g, k)
    if k < 1:
        raise PreconditionUnmet("k must be at least 1")
    if not is_k_factor_critical(g, k).verdict:
        raise PreconditionUnmet(f"graph is not {k}-factor-critical")
    conn = connectivity(g)
    ok = conn.vertex >= k and conn.edge >= k + 1
    if ok and k >= 2:
        ok = is_k_factor_critical(g, k - 2).verdict
    if not ok and raise_on_violation:
        raise TheoremViolated(
            f"{k}-factor-critical graph fails connectivity/downward clauses "
            f"(connectivity {conn.vertex}/{conn.edge})"
        )
    return ok
