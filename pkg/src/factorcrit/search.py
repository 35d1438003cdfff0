"""Catalog generation and ingestion, catalog-wide surveys, counterexample hunts.

Generation is orderly: a labeled graph is emitted iff its column-wise
upper-triangle encoding is lexicographically minimal over all relabelings.
Minimal labelings are closed under removing the last vertex, so extending
each canonical graph of order m-1 by one vertex and keeping the canonical
extensions enumerates every isomorphism class of order m exactly once.
Feasible to order 9; larger catalogs are ingested from graph6 files.
"""

from __future__ import annotations

import json
import multiprocessing
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .errors import (
    FactorCritError,
    FileUnreadable,
    KOutOfRange,
    MalformedEncoding,
    OrderTooLargeForGenerate,
    ParityMismatch,
    TheoremViolated,
)
from .graph import Graph, degree_profile, encode_graph6, parse_graph6, remove_edge
from .matching import PerfectMatcher
from .criticality import is_k_factor_critical
from .configurations import (
    UNCLASSIFIED,
    certify_minimal_edges,
    config_predicates,
)
from .verifiers import (
    MIN_DEGREE_CONJECTURE,
    MIN_DEGREE_OFFSET_8,
    MIN_DEGREE_PROVEN,
    minimal_verdicts,
)

GENERATE_MAX_ORDER = 9

DEDUP_AS_IS = "as-is"
DEDUP_CANONICAL = "canonical"

CONFIG_COMPLETENESS = "config-completeness"
CONFIG_PREDICATES = "config-predicates"


def _is_lex_min(adj: Sequence[int], n: int) -> bool:
    """True iff no relabeling gives a smaller column encoding.

    Depth-first over partial labelings; ``remaining`` carries each unplaced
    vertex with its adjacency bits toward the placed prefix, so candidate
    columns extend by one bit per level.
    """
    target = []
    for j in range(1, n):
        c = 0
        row = adj[j]
        for i in range(j):
            c = (c << 1) | (row >> i & 1)
        target.append(c)

    def dfs(j: int, remaining: list[tuple[int, int]]) -> bool:
        if j == n:
            return True
        if j == 0:
            equal = remaining
        else:
            t = target[j - 1]
            equal = []
            for wc in remaining:
                c = wc[1]
                if c < t:
                    return False
                if c == t:
                    equal.append(wc)
        for w, _ in equal:
            nxt = [(x, (cx << 1) | (adj[x] >> w & 1)) for x, cx in remaining if x != w]
            if not dfs(j + 1, nxt):
                return False
        return True

    return dfs(0, [(v, 0) for v in range(n)])


def _min_labeling(adj: Sequence[int], n: int) -> list[int]:
    """Permutation (canonical position -> original vertex) minimizing the
    column encoding, by branch and bound seeded with a greedy descent."""
    best_cols: list[int] | None = None
    best_perm: list[int] | None = None

    def greedy() -> None:
        nonlocal best_cols, best_perm
        perm: list[int] = []
        cols: list[int] = []
        remaining = [(v, 0) for v in range(n)]
        while remaining:
            code, w = min((c, x) for x, c in remaining)
            if perm:
                cols.append(code)
            perm.append(w)
            remaining = [(x, (cx << 1) | (adj[x] >> w & 1)) for x, cx in remaining if x != w]
        best_cols, best_perm = cols, perm

    def dfs(j: int, perm: list[int], cols: list[int], remaining: list[tuple[int, int]], tight: bool) -> None:
        nonlocal best_cols, best_perm
        if j == n:
            if cols < best_cols:
                best_cols, best_perm = list(cols), list(perm)
            return
        for code, w in sorted((c, x) for x, c in remaining):
            if j >= 1 and tight and code > best_cols[j - 1]:
                break
            child_tight = tight and (j == 0 or code == best_cols[j - 1])
            nxt = [(x, (cx << 1) | (adj[x] >> w & 1)) for x, cx in remaining if x != w]
            if j >= 1:
                cols.append(code)
            perm.append(w)
            dfs(j + 1, perm, cols, nxt, child_tight)
            perm.pop()
            if j >= 1:
                cols.pop()

    if n <= 1:
        return list(range(n))
    greedy()
    dfs(0, [], [], [(v, 0) for v in range(n)], True)
    return best_perm


def canonical_form(g: Graph) -> Graph:
    """The isomorph of ``g`` with the lexicographically minimal encoding."""
    perm = _min_labeling(g.adj, g.n)
    position = {orig: new for new, orig in enumerate(perm)}
    rows = [0] * g.n
    for new, orig in enumerate(perm):
        row = 0
        for w_orig in range(g.n):
            if g.adj[orig] >> w_orig & 1:
                row |= 1 << position[w_orig]
        rows[new] = row
    return Graph(g.n, tuple(rows))


def canonical_graph6(g: Graph) -> str:
    return encode_graph6(canonical_form(g))


def generate_nonisomorphic(n: int) -> Iterator[Graph]:
    """Stream every isomorphism class of order ``n`` exactly once."""
    if n < 1:
        raise KOutOfRange("order must be at least 1")
    if n > GENERATE_MAX_ORDER:
        raise OrderTooLargeForGenerate(
            f"built-in generation stops at order {GENERATE_MAX_ORDER}; ingest a catalog"
        )
    if n == 1:
        yield Graph(1, (0,))
        return
    level: list[tuple[int, ...]] = [(0,)]
    for m in range(2, n):
        level = list(_extend_level(level, m))
    for adj in _extend_level(level, n):
        yield Graph(n, adj)


def _extend_level(parents: Iterable[tuple[int, ...]], m: int) -> Iterator[tuple[int, ...]]:
    top = m - 1
    for parent in parents:
        for mask in range(1 << top):
            adj = [parent[v] | ((mask >> v & 1) << top) for v in range(top)]
            adj.append(mask)
            if _is_lex_min(adj, m):
                yield tuple(adj)


@dataclass(frozen=True)
class Catalog:
    """A fixed-order collection of graphs, held as graph6 lines."""

    n: int
    source: str
    dedup: str
    graph6_lines: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.graph6_lines)

    def __iter__(self) -> Iterator[Graph]:
        return (parse_graph6(line) for line in self.graph6_lines)

    @classmethod
    def from_graphs(cls, n: int, graphs: Iterable[Graph], source: str = "memory") -> Catalog:
        lines = []
        for g in graphs:
            if g.n != n:
                raise MalformedEncoding(f"graph of order {g.n} in order-{n} catalog")
            lines.append(encode_graph6(g))
        return cls(n, source, DEDUP_AS_IS, tuple(lines))


def read_graph6_lines(
    path: str, lenient: bool = False
) -> tuple[list[tuple[int, str]], list[tuple[int, str]]]:
    """Parseable (lineno, graph6) entries of a file plus per-line failures.

    Failures abort with the first message unless ``lenient``; then they are
    returned alongside the good lines.
    """
    try:
        with open(path, "r", encoding="ascii") as handle:
            raw = handle.readlines()
    except OSError as exc:
        raise FileUnreadable(f"cannot read {path}: {exc}") from exc
    good: list[tuple[int, str]] = []
    bad: list[tuple[int, str]] = []
    for lineno, line in enumerate(raw, start=1):
        text = line.strip()
        if not text:
            continue
        try:
            parse_graph6(text)
        except FactorCritError as exc:
            if not lenient:
                raise MalformedEncoding(f"{path}:{lineno}: {exc}") from exc
            bad.append((lineno, str(exc)))
            continue
        if text.startswith(">>graph6<<"):
            text = text[len(">>graph6<<"):]
        good.append((lineno, text))
    return good, bad


def enumerate_catalog(
    n: int,
    path: str | None = None,
    lenient: bool = False,
    dedup: str = DEDUP_AS_IS,
) -> Catalog:
    """Build a catalog by generating order ``n`` or ingesting a graph6 file.

    Ingested lines must all decode to graphs of order ``n``; under ``lenient``
    offending lines are skipped, otherwise they are fatal with their line
    number.  ``dedup='canonical'`` drops isomorphic duplicates on ingest.
    """
    if path is None:
        lines = tuple(encode_graph6(g) for g in generate_nonisomorphic(n))
        return Catalog(n, "generate", DEDUP_CANONICAL, lines)
    good, _bad = read_graph6_lines(path, lenient=lenient)
    lines = []
    seen: set[str] = set()
    for lineno, text in good:
        g = parse_graph6(text)
        if g.n != n:
            if lenient:
                continue
            raise MalformedEncoding(f"{path}:{lineno}: order {g.n}, expected {n}")
        if dedup == DEDUP_CANONICAL:
            canon = canonical_graph6(g)
            if canon in seen:
                continue
            seen.add(canon)
        lines.append(text)
    return Catalog(n, path, dedup, tuple(lines))


def valid_k_values(n: int) -> list[int]:
    """All k with 1 <= k <= n-2 and the parity of n."""
    return [k for k in range(1, n - 1) if (n - k) % 2 == 0]


@dataclass
class SurveyReport:
    """Aggregate of a criticality/minimality sweep of one catalog at one k."""

    n: int
    k: int
    source: str
    total: int = 0
    kfc_count: int = 0
    minimal_count: int = 0
    min_degree_distribution: dict[int, int] = field(default_factory=dict)
    degree_profiles: dict[str, int] = field(default_factory=dict)
    verdict_tallies: dict[str, dict[str, int]] = field(default_factory=dict)
    config_label_counts: dict[str, int] = field(default_factory=dict)
    ambiguous_count: int = 0
    predicate_counts: dict[str, int] = field(default_factory=lambda: {"passed": 0, "failed": 0, "vacuous_edges": 0, "skipped_edges": 0})
    counterexamples: list[tuple[str, str]] = field(default_factory=list)
    errors: list[tuple[str, str]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "n": self.n,
            "k": self.k,
            "source": self.source,
            "total": self.total,
            "kfc": self.kfc_count,
            "minimal": self.minimal_count,
            "min_degree_distribution": {str(d): c for d, c in sorted(self.min_degree_distribution.items())},
            "degree_profiles": dict(sorted(self.degree_profiles.items())),
            "verdicts": {t: dict(v) for t, v in sorted(self.verdict_tallies.items())},
            "config_labels": dict(sorted(self.config_label_counts.items())),
            "ambiguous": self.ambiguous_count,
            "predicates": dict(self.predicate_counts),
            "counterexamples": [list(c) for c in self.counterexamples],
            "errors": [list(e) for e in self.errors],
        }


def _profile_key(profile: dict[int, int]) -> str:
    return ",".join(f"{d}:{c}" for d, c in sorted(profile.items()))


def _survey_record(line: str, k: int, invert_conjecture: bool) -> dict:
    """Everything the aggregator needs about one catalog graph."""
    g = parse_graph6(line)
    record: dict = {"graph6": line, "kfc": False, "minimal": False}
    try:
        matcher = PerfectMatcher(g)
        if not is_k_factor_critical(g, k, matcher).verdict:
            return record
        record["kfc"] = True
        for u, v in g.edges():
            if is_k_factor_critical(remove_edge(g, u, v), k).verdict:
                return record
        record["minimal"] = True
        record["min_degree"] = g.min_degree()
        record["degree_profile"] = _profile_key(degree_profile(g))
        verdicts = []
        failures: list[str] = []
        for verdict in minimal_verdicts(g, k, verified=True):
            passed = verdict.passed
            if invert_conjecture and verdict.theorem in (
                MIN_DEGREE_CONJECTURE, MIN_DEGREE_PROVEN, MIN_DEGREE_OFFSET_8
            ):
                passed = None if passed is None else not passed
            verdicts.append({"theorem": verdict.theorem, "applicable": verdict.applicable, "pass": passed})
            if verdict.applicable and passed is False:
                failures.append(verdict.theorem)
        record["verdicts"] = verdicts
        if g.n - k in (6, 8):
            config: dict = {"labels": {}, "ambiguous": 0, "pred_passed": 0, "pred_failed": 0, "vacuous_edges": 0, "skipped_edges": 0}
            for e, entry in certify_minimal_edges(g, k, verify_minimal=False).items():
                if entry.match is None:
                    config["skipped_edges"] += 1
                    continue
                label = entry.match.label
                config["labels"][label] = config["labels"].get(label, 0) + 1
                if entry.match.ambiguity_flag:
                    config["ambiguous"] += 1
                if label == UNCLASSIFIED:
                    failures.append(CONFIG_COMPLETENESS)
                    continue
                report = config_predicates(g, e, entry.witness, entry.match)
                if not report.hypothesis_met:
                    config["vacuous_edges"] += 1
                elif report.all_passed:
                    config["pred_passed"] += len(report.checks)
                else:
                    config["pred_failed"] += sum(1 for c in report.checks if not c.passed)
                    config["pred_passed"] += sum(1 for c in report.checks if c.passed)
                    failures.append(CONFIG_PREDICATES)
            record["config"] = config
        record["failures"] = failures
    except FactorCritError as exc:
        record["error"] = str(exc)
    return record


def _survey_chunk(args: tuple[list[str], int, bool]) -> list[dict]:
    lines, k, invert = args
    return [_survey_record(line, k, invert) for line in lines]


# Verdicts proven on every graph a desk-scale sweep can reach; a failure on
# one of these aborts the sweep instead of piling up counterexamples.
_PROVEN = {"T1.1", "C1.2", "T4.1", "L2.5", "C2.7", "L3.1", "T5.3", "T5.4", "T5.5",
           CONFIG_COMPLETENESS, CONFIG_PREDICATES}


def survey(
    catalog: Catalog,
    k: int,
    jobs: int = 1,
    raise_on_violation: bool = True,
    jsonl_path: str | None = None,
    skip: int = 0,
    on_minimal: Callable[[str], None] | None = None,
    invert_conjecture: bool = False,
) -> SurveyReport:
    """Run the criticality, minimality, and statement checks over a catalog.

    Deterministic: records are aggregated in catalog order regardless of
    ``jobs``.  ``jsonl_path`` streams one JSON line per graph so long sweeps
    can resume by passing the line count as ``skip`` (the report then covers
    the remainder only).  ``invert_conjecture`` flips the minimum-degree
    verdict and exists solely so tests can prove the hunter detects plants.
    """
    n = catalog.n
    if not 1 <= k <= n - 2:
        raise KOutOfRange(f"k={k} outside 1..{n - 2}")
    if (n - k) % 2:
        raise ParityMismatch(f"k={k} and order {n} have different parity")
    report = SurveyReport(n=n, k=k, source=catalog.source)
    lines = catalog.graph6_lines[skip:]
    sink = open(jsonl_path, "a" if skip else "w", encoding="utf-8") if jsonl_path else None
    try:
        for record in _iter_records(lines, k, jobs, invert_conjecture):
            if sink is not None:
                sink.write(json.dumps(record, sort_keys=True) + "\n")
            _fold_record(report, record, raise_on_violation, on_minimal)
    finally:
        if sink is not None:
            sink.close()
    return report


def _iter_records(lines: Sequence[str], k: int, jobs: int, invert: bool) -> Iterator[dict]:
    if jobs <= 1 or len(lines) < 64:
        for line in lines:
            yield _survey_record(line, k, invert)
        return
    chunk_size = max(32, len(lines) // (jobs * 16))
    chunks = [
        (list(lines[i:i + chunk_size]), k, invert)
        for i in range(0, len(lines), chunk_size)
    ]
    with multiprocessing.get_context("fork").Pool(jobs) as pool:
        for records in pool.imap(_survey_chunk, chunks):
            yield from records


def _fold_record(
    report: SurveyReport,
    record: dict,
    raise_on_violation: bool,
    on_minimal: Callable[[str], None] | None,
) -> None:
    report.total += 1
    line = record["graph6"]
    if "error" in record:
        report.errors.append((line, record["error"]))
        return
    if record["kfc"]:
        report.kfc_count += 1
    if not record["minimal"]:
        return
    report.minimal_count += 1
    if on_minimal is not None:
        on_minimal(line)
    delta = record["min_degree"]
    report.min_degree_distribution[delta] = report.min_degree_distribution.get(delta, 0) + 1
    key = record["degree_profile"]
    report.degree_profiles[key] = report.degree_profiles.get(key, 0) + 1
    for verdict in record["verdicts"]:
        tally = report.verdict_tallies.setdefault(
            verdict["theorem"], {"applicable": 0, "passed": 0, "failed": 0}
        )
        if verdict["applicable"]:
            tally["applicable"] += 1
            if verdict["pass"]:
                tally["passed"] += 1
            elif verdict["pass"] is False:
                tally["failed"] += 1
    config = record.get("config")
    if config is not None:
        for label, count in config["labels"].items():
            report.config_label_counts[label] = report.config_label_counts.get(label, 0) + count
        report.ambiguous_count += config["ambiguous"]
        report.predicate_counts["passed"] += config["pred_passed"]
        report.predicate_counts["failed"] += config["pred_failed"]
        report.predicate_counts["vacuous_edges"] += config["vacuous_edges"]
        report.predicate_counts["skipped_edges"] += config["skipped_edges"]
    for theorem in record.get("failures", ()):
        report.counterexamples.append((line, theorem))
        if raise_on_violation and theorem in _PROVEN:
            raise TheoremViolated(f"{theorem} failed on {line}")


def hunt_counterexamples(
    orders: Iterable[int],
    k_rule: str | int = "all-valid",
    files: dict[int, str] | None = None,
    jobs: int = 1,
    invert_predicate: bool = False,
) -> list[tuple[str, str]]:
    """Every minimally k-factor-critical graph violating an expected-true
    statement, as (graph6, statement id) pairs.

    ``k_rule`` is either "all-valid" or an offset c meaning k = n - c.
    Orders with a supplied file are ingested, the rest generated.
    ``invert_predicate`` flips the minimum-degree check so the harness can
    prove that planted failures surface.
    """
    files = files or {}
    found: list[tuple[str, str]] = []
    for n in orders:
        catalog = enumerate_catalog(n, path=files.get(n))
        if isinstance(k_rule, int):
            ks = [n - k_rule] if n - k_rule in valid_k_values(n) else []
        else:
            ks = valid_k_values(n)
        for k in ks:
            result = survey(
                catalog,
                k,
                jobs=jobs,
                raise_on_violation=False,
                invert_conjecture=invert_predicate,
            )
            found.extend(result.counterexamples)
    return found
